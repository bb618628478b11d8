#include "liex/scalar.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace liex {

namespace {

mpq_class parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty rational");
    if (s[0] == '+') s.erase(0, 1);
    for (std::size_t k = 0; k < s.size(); ++k) {
        char c = s[k];
        bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' || (c == '-' && k == 0);
        if (!ok) throw std::invalid_argument("bad rational: " + std::string(text));
    }
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        if (s.find('/', slash + 1) != std::string::npos || slash + 1 == s.size())
            throw std::invalid_argument("bad rational: " + std::string(text));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    }
    mpq_class q(s);
    q.canonicalize();
    return q;
}

bool rational_sqrt(const mpq_class& q, mpq_class& root) {
    if (sgn(q) < 0) return false;
    mpz_class n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    root = mpq_class(rn, rd);
    root.canonicalize();
    return true;
}

}  // namespace

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

Scalar Scalar::ratio(long p, long q) {
    if (q == 0) throw std::domain_error("zero denominator");
    return Scalar(mpq_class(p, q));
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    mpq_class n = norm();
    return Scalar(re_ / n, -im_ / n, raw_tag{});
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_real() && o.is_real()) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (o.is_real()) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string Scalar::str() const {
    if (is_real()) return re_.get_str();
    if (sgn(re_) == 0) return im_.get_str() + " i";
    std::string im = im_.get_str();
    if (sgn(im_) > 0) im = "+" + im;
    return re_.get_str() + im + " i";
}

Scalar Scalar::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty scalar");
    if (s.back() != 'i') return Scalar(parse_rational(s), mpq_class(0), raw_tag{});
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    }
    std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
    std::string im_part = split == std::string::npos ? s : s.substr(split);
    mpq_class im;
    if (im_part.empty() || im_part == "+") im = 1;
    else if (im_part == "-") im = -1;
    else im = parse_rational(im_part);
    mpq_class re = re_part.empty() ? mpq_class(0) : parse_rational(re_part);
    return Scalar(re, im, raw_tag{});
}

double Scalar::to_double() const {
    if (!is_real()) throw std::domain_error("scalar has an imaginary part: " + str());
    return re_.get_d();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

bool exact_sqrt(const Scalar& s, Scalar& root) {
    mpq_class x, y;
    if (s.is_real()) {
        if (rational_sqrt(s.re(), x)) {
            root = Scalar(x);
            return true;
        }
        if (rational_sqrt(-s.re(), y)) {
            root = Scalar(mpq_class(0), y);
            return true;
        }
        return false;
    }
    mpq_class r;
    if (!rational_sqrt(s.norm(), r)) return false;
    if (!rational_sqrt((s.re() + r) / 2, x) || sgn(x) == 0) return false;
    y = s.im() / (2 * x);
    root = Scalar(x, y);
    return true;
}

}  // namespace liex
