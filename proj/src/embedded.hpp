#pragma once

namespace chowz::embedded {

const char* rings_json();
const char* claims_json();

}  // namespace chowz::embedded
