#include "plumb/qseries.hpp"

#include <json.hpp>

namespace plumb {

QSeries::QSeries(std::optional<Rat> bound, Int den_hint)
    : den_(den_hint <= 0 ? Int(1) : den_hint), bound_(std::move(bound)) {}

Int QSeries::lcm_int(const Int& a, const Int& b) { return lcm(a, b); }

void QSeries::rescale_to(const Int& new_den) {
    if (new_den == den_) return;
    Int f = new_den / den_;
    std::map<Int, Rat> nt;
    for (auto& [k, c] : t_) nt.emplace(k * f, c);
    t_ = std::move(nt);
    den_ = new_den;
}

QSeries QSeries::monomial(const Rat& exponent, const Rat& coeff, std::optional<Rat> bound) {
    QSeries s(std::move(bound), denominator(exponent));
    s.add_term(exponent, coeff);
    return s;
}

void QSeries::add_term(const Rat& exponent, const Rat& coeff) {
    if (coeff == 0) return;
    if (bound_ && exponent > *bound_) return;
    Int d = denominator(exponent);
    if (den_ % d != 0) rescale_to(lcm_int(den_, d));
    Int key = numerator(exponent) * (den_ / d);
    auto it = t_.find(key);
    if (it == t_.end()) {
        t_.emplace(key, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) t_.erase(it);
    }
}

Rat QSeries::min_exponent() const {
    if (t_.empty()) throw Error("QSeries: empty series has no minimum exponent");
    return Rat(t_.begin()->first, den_);
}

Rat QSeries::coeff_at(const Rat& exponent) const {
    Int d = denominator(exponent);
    if (den_ % d != 0) return Rat(0);
    auto it = t_.find(numerator(exponent) * (den_ / d));
    return it == t_.end() ? Rat(0) : it->second;
}

static std::optional<Rat> combined_bound(const std::optional<Rat>& a,
                                         const std::optional<Rat>& b) {
    if (a && b) return std::min(*a, *b);
    return a ? a : b;
}

QSeries QSeries::operator+(const QSeries& o) const {
    QSeries r(combined_bound(bound_, o.bound_), lcm_int(den_, o.den_));
    for (auto& [k, c] : t_) r.add_term(Rat(k, den_), c);
    for (auto& [k, c] : o.t_) r.add_term(Rat(k, o.den_), c);
    return r;
}

QSeries QSeries::operator-(const QSeries& o) const {
    QSeries r(combined_bound(bound_, o.bound_), lcm_int(den_, o.den_));
    for (auto& [k, c] : t_) r.add_term(Rat(k, den_), c);
    for (auto& [k, c] : o.t_) r.add_term(Rat(k, o.den_), -c);
    return r;
}

QSeries QSeries::operator*(const QSeries& o) const {
    QSeries r(combined_bound(bound_, o.bound_), lcm_int(den_, o.den_));
    for (auto& [k1, c1] : t_)
        for (auto& [k2, c2] : o.t_) {
            Rat e = Rat(k1, den_) + Rat(k2, o.den_);
            if (r.bound_ && e > *r.bound_) continue;
            r.add_term(e, c1 * c2);
        }
    return r;
}

QSeries QSeries::operator*(const Rat& c) const {
    QSeries r(bound_, den_);
    if (c == 0) return r;
    for (auto& [k, v] : t_) r.t_.emplace(k, v * c);
    return r;
}

bool QSeries::operator==(const QSeries& o) const {
    if (t_.size() != o.t_.size()) return false;
    auto it = t_.begin();
    auto jt = o.t_.begin();
    for (; it != t_.end(); ++it, ++jt) {
        if (Rat(it->first, den_) != Rat(jt->first, o.den_)) return false;
        if (it->second != jt->second) return false;
    }
    return true;
}

QSeries QSeries::truncated(const Rat& new_bound) const {
    QSeries r(new_bound, den_);
    for (auto& [k, c] : t_) {
        if (Rat(k, den_) > new_bound) break;
        r.t_.emplace(k, c);
    }
    return r;
}

QSeries QSeries::shifted(const Rat& delta) const {
    std::optional<Rat> nb = bound_ ? std::optional<Rat>(*bound_ + delta) : std::nullopt;
    QSeries r(nb, den_);
    for (auto& [k, c] : t_) r.add_term(Rat(k, den_) + delta, c);
    return r;
}

Complex QSeries::eval_at_real(const Real& x) const {
    if (x <= 0) throw Error("QSeries::eval_at_real: need x > 0");
    Real lx = log(x);
    KahanSum acc;
    for (auto& [k, c] : t_) {
        Real e = to_real(Rat(k, den_));
        acc.add(Complex(to_real(c) * exp(e * lx), Real(0)));
    }
    return acc.value();
}

Complex QSeries::eval_radial(long k, const Real& t) const {
    KahanSum acc;
    for (auto& [key, c] : t_) {
        Rat e(key, den_);
        Complex phase = e_of(e / k);
        Real mag = exp(-t * to_real(e));
        acc.add(phase * (to_real(c) * mag));
    }
    return acc.value();
}

std::string QSeries::to_json() const {
    nlohmann::json j;
    j["denominator"] = den_.convert_to<std::string>();
    auto terms = nlohmann::json::array();
    for (auto& [k, c] : t_) {
        nlohmann::json term = nlohmann::json::array();
        term.push_back(k.convert_to<std::string>());
        if (denominator(c) == 1)
            term.push_back(numerator(c).convert_to<std::string>());
        else
            term.push_back(rat_str(c));
        terms.push_back(term);
    }
    j["terms"] = terms;
    return j.dump();
}

} // namespace plumb
