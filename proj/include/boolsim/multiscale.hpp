// The multiscale machinery: crossing events F at strip scale alpha, reach
// events G, the scale recursion P[F(10a)] <= C1 (P[F(a)]^2 + P[G(a)]) with
// C1 = 37^2, the contraction chain with C2 = 9, the summability certificate
// Sum_n (P[F(10^n b)] + P[G(10^n b)]) <= 1/2, the alternating strip events
// H_n / J_n, and the vacancy lower bound they certify.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boolsim/geom.hpp"
#include "boolsim/radius_law.hpp"
#include "boolsim/rng.hpp"
#include "boolsim/stats.hpp"

namespace boolsim {

inline constexpr double kC1 = 1369.0;  // 37^2
inline constexpr double kC2 = 9.0;

// Scales alpha_n = 10^n * b for n = 1..n_max.
struct ScaleLadder {
    double base = 1.0;          // b
    int n_max = 4;
    double lambda = 0.1;
    RadiusLaw law;
    double reach_factor = 1e3;  // kappa

    double scale(int n) const { return std::pow(10.0, n) * base; }
};

// P[F(alpha)]: short-way occupied crossing of S(alpha) by grains centered in
// the alpha-neighborhood of S(alpha). Monte Carlo over n_reps replicates.
BernoulliEstimate estimate_F(double alpha, double lambda, const RadiusLaw& law,
                             std::uint64_t n_reps, RngStream stream,
                             int threads = 1);

// P[G(alpha)] = 1 - exp(-Lambda), Lambda the exact reach intensity of grains
// centered in B(kappa*alpha) \ S(alpha)_alpha touching S(alpha). No MC.
double exact_G(double alpha, double lambda, const RadiusLaw& law, double kappa);

// lambda * pi * (kappa*alpha)^2 * P[rho > alpha]: the Markov bound on G.
double markov_bound_G(double alpha, double lambda, const RadiusLaw& law,
                      double kappa);

// Monte Carlo estimate of G through the thinned reaching sampler; the
// cross-oracle for exact_G.
BernoulliEstimate estimate_G_mc(double alpha, double lambda, const RadiusLaw& law,
                                double kappa, std::uint64_t n_reps,
                                RngStream stream, int threads = 1);

enum class Verdict { Consistent, Violated, Inconclusive, NotApplicable };

std::string verdict_name(Verdict v);

// One check of the recursion P[F(10a)] <= C1 (P[F(a)]^2 + P[G(a)]).
struct RecursionCheck {
    double alpha = 0.0;
    double lambda = 0.0;
    double kappa = 0.0;
    std::uint64_t n_reps = 0;
    BernoulliEstimate lhs;      // F(10a)
    BernoulliEstimate f_small;  // F(a)
    double g_small = 0.0;       // exact G(a)
    double rhs_hi = 0.0;        // C1 (F_hi^2 + G)
    double slack = 0.0;         // rhs_hi - lhs_lo
    Verdict verdict = Verdict::Inconclusive;
};

RecursionCheck check_recursion(double alpha, double lambda, const RadiusLaw& law,
                               double kappa, std::uint64_t n_reps,
                               RngStream stream, int threads = 1);

// The contraction chain: given f0 <= 1/C2 and sum(g) <= 1/C2^2, iterate
// f_n <= f_{n-1}/C2 + g_n. Precondition failures yield a verdict, not an
// exception.
struct BoundChain {
    bool applicable = false;
    std::string reason;
    std::vector<double> f_bounds;  // n = 1..g_seq.size()
    double sum_g = 0.0;
    double sum_f = 0.0;       // exact geometric total: f0/(C2-1) + sum_g*C2/(C2-1)
    double coarse_total = 0.0; // 2 C2^-2 + 3 sum_g, the coarse closure
};

BoundChain bound_chain(double f0, std::span<const double> g_seq, double c2 = kC2);

// One scale row of a certificate.
struct ScaleTerm {
    int n = 0;
    double alpha = 0.0;
    double f_lo = 0.0, f_pt = 0.0, f_hi = 0.0;
    bool f_empirical = false;  // empirical estimate vs chain bound
    std::uint64_t f_trials = 0;
    double g_value = 0.0;
    bool g_exact = false;      // exact quadrature vs Markov bound
    double term = 0.0;         // F bound + G bound at this scale
};

struct SummabilityCertificate {
    double base = 0.0;
    double lambda = 0.0;
    double kappa = 0.0;
    std::string law;
    int n_empirical = 0;
    int n_max = 0;
    std::uint64_t n_reps = 0;
    std::vector<ScaleTerm> scales;  // n = 1..n_max
    bool chain_applicable = false;
    std::string chain_reason;
    double chain_f0 = 0.0;          // C1 * F_hi at the handoff scale
    double chain_sum_g = 0.0;       // sum of g_n entering the chain
    double tail_f = 0.0;            // certified F tail beyond n_max
    double tail_g = 0.0;            // Markov G tail beyond n_max
    double total = 0.0;
    bool pass = false;              // total <= 1/2 with an applicable chain
};

// Hybrid certificate: empirical F for n <= n_empirical, exact G everywhere
// up to n_max, chain bounds for the remaining F scales, Markov tails beyond.
SummabilityCertificate summability_certificate(const ScaleLadder& ladder,
                                               int n_empirical,
                                               std::uint64_t n_reps,
                                               RngStream stream, int threads = 1);

// Strips S_1..S_n_max: aspect ratio 10, short side 10^n b, horizontal for
// odd n, vertical for even, all centered at the origin. Consecutive strips
// cross each other the short way by construction (verified).
std::vector<Rect> strip_sequence(double base, int n_max);

// H_n / J_n at one scale plus the comparison against F + G.
struct HJCheck {
    int n = 0;
    double alpha = 0.0;
    BernoulliEstimate h;        // P[H_n], Monte Carlo
    double j = 0.0;             // P[J_n], exact
    double union_lo = 0.0;      // H_lo + J - H_lo*J   (independent regions)
    double union_hi = 0.0;      // H_hi + J - H_hi*J
    BernoulliEstimate f;        // P[F(10^n b)], Monte Carlo
    double g = 0.0;             // exact G(10^n b)
    double rhs_hi = 0.0;        // F_hi + G
    Verdict verdict = Verdict::Inconclusive;
};

HJCheck estimate_H_J(int n, const ScaleLadder& ladder, std::uint64_t n_reps,
                     RngStream stream, int threads = 1);

// Vacancy certificate: 1 - sum of (upper bounds on) P[H_n u J_n] over all
// scales, the head measured, the tail certified through F/G bounds.
struct VacancyCertificate {
    int n_head = 0;
    std::uint64_t n_reps_h = 0;
    std::vector<HJCheck> head;            // n = 1..n_head (H measured, J exact)
    SummabilityCertificate scale_bounds;  // supplies terms for n > n_head
    double union_upper = 0.0;
    double lower_bound = 0.0;             // on the vacancy-percolation proxy
    bool informative = false;             // lower_bound > 0
    bool pass_half = false;               // lower_bound >= 1/2
};

VacancyCertificate vacancy_certificate(const ScaleLadder& ladder, int n_head,
                                       int n_empirical, std::uint64_t n_reps_h,
                                       std::uint64_t n_reps_f, RngStream stream,
                                       int threads = 1);

} // namespace boolsim
