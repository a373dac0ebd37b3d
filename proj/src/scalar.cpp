#include "bicx/scalar.hpp"

#include <cctype>

namespace bicx {

namespace {

std::string rational_str(const Rational& r) {
    return r.str();
}

// Renders |r| followed by "*i", contracting the unit coefficient.
std::string imag_part_str(const Rational& r) {
    Rational a = r < 0 ? Rational(-r) : r;
    if (a == 1) return "i";
    return rational_str(a) + "*i";
}

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    bool done() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }
    char take() { return s[pos++]; }

    [[noreturn]] void fail(const std::string& why) const {
        throw parse_error("bad scalar '" + s + "': " + why);
    }
};

Rational parse_unsigned_rational(Cursor& c) {
    auto digits = [&]() {
        std::string d;
        while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek())))
            d.push_back(c.take());
        if (d.empty()) c.fail("expected digits");
        return d;
    };
    boost::multiprecision::cpp_int num(digits());
    if (!c.done() && c.peek() == '/') {
        c.take();
        boost::multiprecision::cpp_int den(digits());
        if (den == 0) c.fail("zero denominator");
        return Rational(num, den);
    }
    return Rational(num);
}

// term := [sign already consumed] ( "i" | rational ( "*i" )? )
// Returns the term value with the given sign applied.
Scalar parse_term(Cursor& c, bool negative) {
    Rational sign = negative ? -1 : 1;
    if (!c.done() && c.peek() == 'i') {
        c.take();
        return Scalar(0, sign);
    }
    Rational mag = parse_unsigned_rational(c);
    if (!c.done() && c.peek() == '*') {
        c.take();
        if (c.done() || c.take() != 'i') c.fail("expected 'i' after '*'");
        return Scalar(0, sign * mag);
    }
    return Scalar(sign * mag, 0);
}

} // namespace

std::string Scalar::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re_ != 0) {
        out = rational_str(re_);
        if (im_ != 0) {
            out += (im_ < 0) ? "-" : "+";
            out += imag_part_str(im_);
        }
        return out;
    }
    if (im_ < 0) out = "-";
    out += imag_part_str(im_);
    return out;
}

Scalar Scalar::parse(const std::string& text) {
    Cursor c{text};
    if (c.done()) c.fail("empty");
    // Only the canonical spelling is accepted: a leading '+' never appears
    // in str() output, so it is a parse error here.
    bool neg = false;
    if (c.peek() == '-') {
        c.take();
        neg = true;
    }
    Scalar value = parse_term(c, neg);
    if (!c.done()) {
        char op = c.take();
        if (op != '+' && op != '-') c.fail("expected '+' or '-' between parts");
        Scalar second = parse_term(c, op == '-');
        if (value.im() != 0 || second.im() == 0)
            c.fail("expected one real and one imaginary part");
        value += second;
    }
    if (!c.done()) c.fail("trailing characters");
    return value;
}

} // namespace bicx
