// Grain radius distributions. Everything a sampler or certificate needs is
// closed-form: strict and weak tails, moments (with a distinguished infinity),
// the partial integrals behind reach bounds, and exact conditional /
// size-biased sampling for spatial thinning.
#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "boolsim/rng.hpp"

namespace boolsim {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class RadiusLaw;

struct FixedLaw {
    double r0 = 1.0;
};
struct UniformLaw {
    double a = 0.0;
    double b = 1.0;
};
struct ExponentialLaw {
    double mean = 1.0;
};
struct ParetoLaw {
    double tau = 3.0;   // tail exponent
    double xmin = 1.0;  // scale
};
struct ZeroMixtureLaw {
    double p0 = 0.0;  // mass at radius 0
    std::shared_ptr<const RadiusLaw> inner;
};

class RadiusLaw {
public:
    using Variant =
        std::variant<FixedLaw, UniformLaw, ExponentialLaw, ParetoLaw, ZeroMixtureLaw>;

    RadiusLaw() : v_(FixedLaw{1.0}) {}
    RadiusLaw(Variant v) : v_(std::move(v)) { validate(); }

    static RadiusLaw fixed(double r0) { return RadiusLaw(FixedLaw{r0}); }
    static RadiusLaw uniform(double a, double b) { return RadiusLaw(UniformLaw{a, b}); }
    static RadiusLaw exponential(double mean) {
        return RadiusLaw(ExponentialLaw{mean});
    }
    static RadiusLaw pareto(double tau, double xmin) {
        return RadiusLaw(ParetoLaw{tau, xmin});
    }
    static RadiusLaw zero_mixture(double p0, RadiusLaw inner) {
        return RadiusLaw(
            ZeroMixtureLaw{p0, std::make_shared<RadiusLaw>(std::move(inner))});
    }

    const Variant& var() const { return v_; }

    // P[rho = 0]
    double zero_mass() const {
        if (const auto* f = std::get_if<FixedLaw>(&v_)) return f->r0 == 0.0 ? 1.0 : 0.0;
        if (const auto* z = std::get_if<ZeroMixtureLaw>(&v_))
            return z->p0 + (1.0 - z->p0) * z->inner->zero_mass();
        return 0.0;
    }

    // P[rho > t], exact.
    double tail(double t) const {
        if (t < 0.0) return 1.0;
        if (const auto* f = std::get_if<FixedLaw>(&v_)) return t < f->r0 ? 1.0 : 0.0;
        if (const auto* u = std::get_if<UniformLaw>(&v_)) {
            if (t < u->a) return 1.0;
            if (t >= u->b) return 0.0;
            return (u->b - t) / (u->b - u->a);
        }
        if (const auto* e = std::get_if<ExponentialLaw>(&v_))
            return std::exp(-t / e->mean);
        if (const auto* p = std::get_if<ParetoLaw>(&v_))
            return t <= p->xmin ? 1.0 : std::pow(p->xmin / t, p->tau);
        const auto& z = std::get<ZeroMixtureLaw>(v_);
        return (1.0 - z.p0) * z.inner->tail(t);
    }

    // P[rho >= t], exact. Differs from tail() only at atoms.
    double tail_geq(double t) const {
        if (t <= 0.0) return 1.0;
        if (const auto* f = std::get_if<FixedLaw>(&v_)) return t <= f->r0 ? 1.0 : 0.0;
        if (const auto* z = std::get_if<ZeroMixtureLaw>(&v_))
            return (1.0 - z->p0) * z->inner->tail_geq(t);
        return tail(t);
    }

    // E[rho^k], exact; +inf when divergent.
    double moment(int k) const {
        if (k < 0) throw std::invalid_argument("moment: k must be >= 0");
        if (k == 0) return 1.0;
        if (const auto* f = std::get_if<FixedLaw>(&v_)) return std::pow(f->r0, k);
        if (const auto* u = std::get_if<UniformLaw>(&v_)) {
            double kk = static_cast<double>(k);
            return (std::pow(u->b, kk + 1.0) - std::pow(u->a, kk + 1.0)) /
                   ((kk + 1.0) * (u->b - u->a));
        }
        if (const auto* e = std::get_if<ExponentialLaw>(&v_))
            return std::tgamma(static_cast<double>(k) + 1.0) * std::pow(e->mean, k);
        if (const auto* p = std::get_if<ParetoLaw>(&v_)) {
            if (static_cast<double>(k) >= p->tau) return kInf;
            return p->tau * std::pow(p->xmin, k) / (p->tau - static_cast<double>(k));
        }
        const auto& z = std::get<ZeroMixtureLaw>(v_);
        return (1.0 - z.p0) * z.inner->moment(k);
    }

    // Supremum of the support (+inf for unbounded laws).
    double max_radius() const {
        if (const auto* f = std::get_if<FixedLaw>(&v_)) return f->r0;
        if (const auto* u = std::get_if<UniformLaw>(&v_)) return u->b;
        if (const auto* z = std::get_if<ZeroMixtureLaw>(&v_))
            return z->inner->max_radius();
        return kInf;
    }

    // Integral of P[rho >= s] ds over [r, inf); +inf iff E[rho] = inf.
    double integral_tail(double r) const {
        r = std::fmax(r, 0.0);
        if (const auto* f = std::get_if<FixedLaw>(&v_)) return std::fmax(0.0, f->r0 - r);
        if (const auto* u = std::get_if<UniformLaw>(&v_)) {
            if (r >= u->b) return 0.0;
            double head = r < u->a ? u->a - r : 0.0;
            double lo = std::fmax(r, u->a);
            return head + (u->b - lo) * (u->b - lo) / (2.0 * (u->b - u->a));
        }
        if (const auto* e = std::get_if<ExponentialLaw>(&v_))
            return e->mean * std::exp(-r / e->mean);
        if (const auto* p = std::get_if<ParetoLaw>(&v_)) {
            if (p->tau <= 1.0) return kInf;
            if (r >= p->xmin)
                return std::pow(p->xmin, p->tau) * std::pow(r, 1.0 - p->tau) /
                       (p->tau - 1.0);
            return (p->xmin - r) + p->xmin / (p->tau - 1.0);
        }
        const auto& z = std::get<ZeroMixtureLaw>(v_);
        return (1.0 - z.p0) * z.inner->integral_tail(r);
    }

    // Integral of s * P[rho >= s] ds over [r, inf); +inf iff E[rho^2] = inf.
    double integral_s_tail(double r) const {
        r = std::fmax(r, 0.0);
        if (const auto* f = std::get_if<FixedLaw>(&v_))
            return r < f->r0 ? (f->r0 * f->r0 - r * r) / 2.0 : 0.0;
        if (const auto* u = std::get_if<UniformLaw>(&v_)) {
            if (r >= u->b) return 0.0;
            double head = r < u->a ? (u->a * u->a - r * r) / 2.0 : 0.0;
            double lo = std::fmax(r, u->a);
            // integral of s(b-s)/(b-a) over [lo, b]
            double b = u->b;
            double body = (b * b * b / 6.0 - b * lo * lo / 2.0 + lo * lo * lo / 3.0) /
                          (b - u->a);
            return head + body;
        }
        if (const auto* e = std::get_if<ExponentialLaw>(&v_))
            return e->mean * (r + e->mean) * std::exp(-r / e->mean);
        if (const auto* p = std::get_if<ParetoLaw>(&v_)) {
            if (p->tau <= 2.0) return kInf;
            if (r >= p->xmin)
                return std::pow(p->xmin, p->tau) * std::pow(r, 2.0 - p->tau) /
                       (p->tau - 2.0);
            return (p->xmin * p->xmin - r * r) / 2.0 +
                   p->xmin * p->xmin / (p->tau - 2.0);
        }
        const auto& z = std::get<ZeroMixtureLaw>(v_);
        return (1.0 - z.p0) * z.inner->integral_s_tail(r);
    }

    // E[rho^k * 1{rho >= s}], exact; +inf when the full moment diverges.
    double partial_moment(int k, double s) const {
        if (k < 0) throw std::invalid_argument("partial_moment: k must be >= 0");
        s = std::fmax(s, 0.0);
        if (k == 0) return tail_geq(s);
        if (const auto* f = std::get_if<FixedLaw>(&v_))
            return s <= f->r0 ? std::pow(f->r0, k) : 0.0;
        if (const auto* u = std::get_if<UniformLaw>(&v_)) {
            if (s >= u->b) return 0.0;
            double lo = std::fmax(s, u->a);
            double kk = static_cast<double>(k);
            return (std::pow(u->b, kk + 1.0) - std::pow(lo, kk + 1.0)) /
                   ((kk + 1.0) * (u->b - u->a));
        }
        if (const auto* e = std::get_if<ExponentialLaw>(&v_)) {
            // k! m^k e^{-s/m} sum_{j<=k} (s/m)^j / j!
            double m = e->mean, ratio = s / m;
            double series = 0.0, term = 1.0;
            for (int j = 0; j <= k; ++j) {
                series += term;
                term *= ratio / (j + 1.0);
            }
            return std::tgamma(static_cast<double>(k) + 1.0) * std::pow(m, k) *
                   std::exp(-ratio) * series;
        }
        if (const auto* p = std::get_if<ParetoLaw>(&v_)) {
            if (static_cast<double>(k) >= p->tau) return kInf;
            double lo = std::fmax(s, p->xmin);
            return p->tau * std::pow(p->xmin, p->tau) *
                   std::pow(lo, static_cast<double>(k) - p->tau) /
                   (p->tau - static_cast<double>(k));
        }
        const auto& z = std::get<ZeroMixtureLaw>(v_);
        return (1.0 - z.p0) * z.inner->partial_moment(k, s);
    }

    // E[rho * 1{rho >= s}], the partial first moment behind size-biased tails.
    double partial_first_moment(double s) const { return partial_moment(1, s); }

    // P̃[rho >= s] under the size-biased law rho dmu / E[rho].
    double size_biased_tail_geq(double s) const {
        double m1 = moment(1);
        if (!(m1 > 0.0) || std::isinf(m1))
            throw std::invalid_argument("size-biased tail needs finite positive E[rho]");
        return std::fmin(1.0, partial_first_moment(s) / m1);
    }

    double sample(Philox& rng) const {
        if (const auto* f = std::get_if<FixedLaw>(&v_)) return f->r0;
        if (const auto* u = std::get_if<UniformLaw>(&v_))
            return rng.uniform(u->a, u->b);
        if (const auto* e = std::get_if<ExponentialLaw>(&v_))
            return rng.exponential(e->mean);
        if (const auto* p = std::get_if<ParetoLaw>(&v_))
            return p->xmin * std::pow(rng.u01_pos(), -1.0 / p->tau);
        const auto& z = std::get<ZeroMixtureLaw>(v_);
        return rng.u01() < z.p0 ? 0.0 : z.inner->sample(rng);
    }

    // Sample from mu conditioned on {rho >= s}; caller must have
    // tail_geq(s) > 0. Exact by per-family inverse transforms.
    double sample_given_at_least(double s, Philox& rng) const {
        if (s <= 0.0) return sample(rng);
        if (const auto* f = std::get_if<FixedLaw>(&v_)) {
            if (s > f->r0)
                throw std::invalid_argument("conditional sample on a null event");
            return f->r0;
        }
        if (const auto* u = std::get_if<UniformLaw>(&v_)) {
            if (s > u->b)
                throw std::invalid_argument("conditional sample on a null event");
            return rng.uniform(std::fmax(s, u->a), u->b);
        }
        if (const auto* e = std::get_if<ExponentialLaw>(&v_))
            return s + rng.exponential(e->mean);  // memoryless
        if (const auto* p = std::get_if<ParetoLaw>(&v_)) {
            double lo = std::fmax(s, p->xmin);
            return lo * std::pow(rng.u01_pos(), -1.0 / p->tau);
        }
        const auto& z = std::get<ZeroMixtureLaw>(v_);
        return z.inner->sample_given_at_least(s, rng);
    }

    // Sample from the size-biased law rho dmu(rho) / E[rho].
    double sample_size_biased(Philox& rng) const {
        if (const auto* f = std::get_if<FixedLaw>(&v_)) return f->r0;
        if (const auto* u = std::get_if<UniformLaw>(&v_))
            return std::sqrt(u->a * u->a +
                             rng.u01() * (u->b * u->b - u->a * u->a));
        if (const auto* e = std::get_if<ExponentialLaw>(&v_))
            return -e->mean * std::log(rng.u01_pos() * rng.u01_pos());  // Gamma(2)
        if (const auto* p = std::get_if<ParetoLaw>(&v_)) {
            if (p->tau <= 1.0)
                throw std::invalid_argument("size-biased Pareto needs tau > 1");
            return p->xmin * std::pow(rng.u01_pos(), -1.0 / (p->tau - 1.0));
        }
        const auto& z = std::get<ZeroMixtureLaw>(v_);
        return z.inner->sample_size_biased(rng);  // atom at 0 has zero weight
    }

    // Size-biased law conditioned on {rho >= s}.
    double sample_size_biased_given(double s, Philox& rng) const {
        if (s <= 0.0) return sample_size_biased(rng);
        if (const auto* f = std::get_if<FixedLaw>(&v_)) {
            if (s > f->r0)
                throw std::invalid_argument("conditional sample on a null event");
            return f->r0;
        }
        if (const auto* u = std::get_if<UniformLaw>(&v_)) {
            if (s > u->b)
                throw std::invalid_argument("conditional sample on a null event");
            double lo = std::fmax(s, u->a);
            return std::sqrt(lo * lo + rng.u01() * (u->b * u->b - lo * lo));
        }
        if (const auto* e = std::get_if<ExponentialLaw>(&v_)) {
            // density prop. to (s+t) e^{-t/m}: Exp with weight s, Gamma(2) with m.
            double m = e->mean;
            double t = rng.u01() < s / (s + m)
                           ? rng.exponential(m)
                           : -m * std::log(rng.u01_pos() * rng.u01_pos());
            return s + t;
        }
        if (const auto* p = std::get_if<ParetoLaw>(&v_)) {
            if (p->tau <= 1.0)
                throw std::invalid_argument("size-biased Pareto needs tau > 1");
            double lo = std::fmax(s, p->xmin);
            return lo * std::pow(rng.u01_pos(), -1.0 / (p->tau - 1.0));
        }
        const auto& z = std::get<ZeroMixtureLaw>(v_);
        return z.inner->sample_size_biased_given(s, rng);
    }

    // Radii at which the tail has a kink or jump; quadratures split here.
    std::vector<double> breakpoints() const {
        if (const auto* f = std::get_if<FixedLaw>(&v_)) return {f->r0};
        if (const auto* u = std::get_if<UniformLaw>(&v_)) return {u->a, u->b};
        if (const auto* p = std::get_if<ParetoLaw>(&v_)) return {p->xmin};
        if (const auto* z = std::get_if<ZeroMixtureLaw>(&v_))
            return z->inner->breakpoints();
        return {};
    }

    // Same law with all lengths multiplied by s.
    RadiusLaw scaled(double s) const {
        if (!(s > 0.0)) throw std::invalid_argument("scaled: factor must be > 0");
        if (const auto* f = std::get_if<FixedLaw>(&v_)) return fixed(f->r0 * s);
        if (const auto* u = std::get_if<UniformLaw>(&v_))
            return uniform(u->a * s, u->b * s);
        if (const auto* e = std::get_if<ExponentialLaw>(&v_))
            return exponential(e->mean * s);
        if (const auto* p = std::get_if<ParetoLaw>(&v_))
            return pareto(p->tau, p->xmin * s);
        const auto& z = std::get<ZeroMixtureLaw>(v_);
        return zero_mixture(z.p0, z.inner->scaled(s));
    }

    std::string to_string() const {
        std::ostringstream os;
        os.precision(17);
        if (const auto* f = std::get_if<FixedLaw>(&v_))
            os << "fixed(" << f->r0 << ")";
        else if (const auto* u = std::get_if<UniformLaw>(&v_))
            os << "uniform(" << u->a << "," << u->b << ")";
        else if (const auto* e = std::get_if<ExponentialLaw>(&v_))
            os << "exponential(" << e->mean << ")";
        else if (const auto* p = std::get_if<ParetoLaw>(&v_))
            os << "pareto(" << p->tau << "," << p->xmin << ")";
        else {
            const auto& z = std::get<ZeroMixtureLaw>(v_);
            os << "zeromix(" << z.p0 << "," << z.inner->to_string() << ")";
        }
        return os.str();
    }

private:
    void validate() const {
        if (const auto* f = std::get_if<FixedLaw>(&v_)) {
            if (!(f->r0 >= 0.0)) throw std::invalid_argument("fixed: radius must be >= 0");
        } else if (const auto* u = std::get_if<UniformLaw>(&v_)) {
            if (!(u->a >= 0.0 && u->b > u->a))
                throw std::invalid_argument("uniform: need 0 <= a < b");
        } else if (const auto* e = std::get_if<ExponentialLaw>(&v_)) {
            if (!(e->mean > 0.0))
                throw std::invalid_argument("exponential: mean must be > 0");
        } else if (const auto* p = std::get_if<ParetoLaw>(&v_)) {
            if (!(p->tau > 0.0))
                throw std::invalid_argument("pareto: tail exponent must be > 0");
            if (!(p->xmin > 0.0))
                throw std::invalid_argument("pareto: scale must be > 0");
        } else {
            const auto& z = std::get<ZeroMixtureLaw>(v_);
            if (!(z.p0 >= 0.0 && z.p0 < 1.0))
                throw std::invalid_argument("zeromix: need 0 <= p0 < 1");
            if (!z.inner) throw std::invalid_argument("zeromix: missing inner law");
        }
        // Standing assumption of the model: mu({0}) < 1.
        if (zero_mass() >= 1.0)
            throw std::invalid_argument("radius law is concentrated at 0");
    }

    Variant v_;
};

} // namespace boolsim
