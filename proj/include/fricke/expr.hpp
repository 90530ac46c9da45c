#pragma once

// Arithmetic over fixture literals: numbers, + - * /, parentheses, sqrt().

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "fricke/errors.hpp"

namespace fricke {

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    double parse()
    {
        double v = expr();
        skip();
        if (pos_ != s_.size())
            fail("trailing input");
        return v;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const char* what) const
    {
        throw FixtureError("bad expression '" + std::string(s_) + "': " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    double expr()
    {
        double v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }

    double term()
    {
        double v = factor();
        for (;;) {
            if (eat('*'))
                v *= factor();
            else if (eat('/'))
                v /= factor();
            else
                return v;
        }
    }

    double factor()
    {
        if (eat('-'))
            return -factor();
        if (eat('+'))
            return factor();
        if (eat('(')) {
            double v = expr();
            if (!eat(')'))
                fail("missing ')'");
            return v;
        }
        skip();
        if (s_.substr(pos_, 4) == "sqrt") {
            pos_ += 4;
            if (!eat('('))
                fail("sqrt needs '('");
            double v = expr();
            if (!eat(')'))
                fail("missing ')'");
            return std::sqrt(v);
        }
        double v = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc())
            fail("expected a number");
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return v;
    }
};

} // namespace detail

inline double eval_expr(std::string_view s)
{
    return detail::ExprParser(s).parse();
}

} // namespace fricke
