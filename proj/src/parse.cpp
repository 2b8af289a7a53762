#include "chowz/poly.hpp"

#include <cctype>

namespace chowz {
namespace {

// expr   := term (('+'|'-') term)*
// term   := unary ('*' unary)*
// unary  := '-' unary | power
// power  := atom ('^' integer)?
// atom   := integer | identifier | '(' expr ')'
class Parser {
public:
    Parser(std::string_view s, const RingPtr& ring) : s_(s), ring_(ring) {}

    Polynomial run() {
        skip();
        if (pos_ >= s_.size()) fail("empty expression");
        Polynomial p = expr();
        skip();
        if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at column " + std::to_string(pos_ + 1), pos_ + 1);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial p = term();
        for (;;) {
            if (eat('+')) p += term();
            else if (eat('-')) p -= term();
            else return p;
        }
    }

    Polynomial term() {
        Polynomial p = unary();
        while (eat('*')) p *= unary();
        return p;
    }

    Polynomial unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial p = atom();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            if (pos_ - start > 4) fail("exponent too large");
            p = p.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
        }
        return p;
    }

    Polynomial atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Polynomial::constant(ring_, Integer(std::string(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (!ring_->find(name)) {
                pos_ = start;
                fail("unknown variable '" + name + "'");
            }
            return Polynomial::variable(ring_, name);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    const RingPtr& ring_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) { return Parser(text, ring).run(); }

}  // namespace chowz
