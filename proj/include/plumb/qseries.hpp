// Sparse formal q-series with exact rational exponents.
//
// Terms live in a sorted map keyed by scaled exponent: exponent = key / den.
// A series optionally carries a truncation bound E; arithmetic keeps the
// result correct for every exponent <= E (given complete inputs up to E).

#pragma once

#include <map>
#include <optional>
#include <string>

#include "plumb/numeric.hpp"

namespace plumb {

class QSeries {
  public:
    QSeries() = default;
    explicit QSeries(std::optional<Rat> bound, Int den_hint = 1);

    static QSeries monomial(const Rat& exponent, const Rat& coeff,
                            std::optional<Rat> bound = std::nullopt);

    void add_term(const Rat& exponent, const Rat& coeff);

    const Int& denominator_lcm() const { return den_; }
    const std::map<Int, Rat>& terms() const { return t_; }
    std::optional<Rat> bound() const { return bound_; }
    size_t size() const { return t_.size(); }
    bool empty() const { return t_.empty(); }

    Rat exponent_of(const std::map<Int, Rat>::const_iterator& it) const {
        return Rat(it->first, den_);
    }
    Rat min_exponent() const; // throws on empty
    Rat coeff_at(const Rat& exponent) const;

    QSeries operator+(const QSeries& o) const;
    QSeries operator-(const QSeries& o) const;
    QSeries operator*(const QSeries& o) const;
    QSeries operator*(const Rat& c) const;
    bool operator==(const QSeries& o) const;

    QSeries truncated(const Rat& new_bound) const;
    QSeries shifted(const Rat& delta) const; // multiply by q^delta

    // Sum of c * x^e over terms, for real 0 < x < 1 (or any x > 0 when all
    // exponents are tame).
    Complex eval_at_real(const Real& x) const;
    // Sum of c * e(e/k) * exp(-t*e): the series along the radius toward the
    // k-th root of unity.  Exact rational phases.
    Complex eval_radial(long k, const Real& t) const;

    std::string to_json() const;

  private:
    void rescale_to(const Int& new_den);
    static Int lcm_int(const Int& a, const Int& b);

    Int den_ = 1;
    std::map<Int, Rat> t_;
    std::optional<Rat> bound_;
};

} // namespace plumb
