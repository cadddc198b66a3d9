// Threshold estimation: crossing-probability sweeps, stochastic bisection
// for the occupied/vacant critical intensities at finite scale, the expected
// component diameter of the unit interval (lambda_D machinery), and the
// truncated E-event of the diameter argument.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "boolsim/percolation.hpp"
#include "boolsim/radius_law.hpp"
#include "boolsim/stats.hpp"

namespace boolsim {

struct SweepRow {
    double lambda = 0.0;
    BernoulliEstimate estimate;
};

// Left-right crossing probability of an L x L square per grid intensity.
// Grains are sampled in the guard-radius neighborhood of the square, the
// guard chosen so omitted grains matter with probability < 1e-4.
std::vector<SweepRow> crossing_prob_sweep(std::span<const double> lambda_grid,
                                          double L, const RadiusLaw& law,
                                          Phase phase, std::uint64_t n_reps,
                                          RngStream stream, int threads = 1);

struct ProbeRow {
    double lambda = 0.0;
    BernoulliEstimate estimate;
};

struct ScaleBracket {
    double scale = 0.0;        // L
    double lo = 0.0;
    double hi = 0.0;
    std::vector<ProbeRow> trace;
};

struct ThresholdEstimate {
    Phase phase = Phase::Occupied;
    double p_star = 0.5;
    double bracket_tol = 0.04;
    std::uint64_t reps_per_probe = 0;
    std::uint64_t budget = 0;
    std::uint64_t replicates_used = 0;
    bool budget_exhausted = false;
    std::vector<ScaleBracket> per_scale;

    const ScaleBracket& final_bracket() const { return per_scale.back(); }
};

// Stochastic bisection of the crossing probability in lambda at each scale,
// targeting p_star; occupied probabilities rise with lambda, vacant fall.
ThresholdEstimate estimate_threshold(const RadiusLaw& law, Phase phase,
                                     std::span<const double> scales,
                                     double p_star, double bracket_tol,
                                     std::uint64_t reps_per_probe,
                                     std::uint64_t budget, RngStream stream,
                                     int threads = 1);

struct DiameterEstimate {
    double lambda = 0.0;
    std::uint64_t n_reps = 0;
    double mean_diameter = 0.0;   // censored replicates enter as lower bounds
    double std_error = 0.0;
    double censored_fraction = 0.0;
    bool unreliable = false;      // censoring above 20%
    double window_cap = 0.0;
};

// E[D(W_0)]: diameter of the union of I_0 = [0,1] x {0} with all grain
// components meeting it. Windows grow per replicate until the component
// clears the boundary guard or the cap is hit (censored, lower bound).
DiameterEstimate estimate_lambda_D(double lambda, const RadiusLaw& law,
                                   std::uint64_t n_reps, double window_cap,
                                   RngStream stream, int threads = 1);

struct CensorProbe {
    double lambda = 0.0;
    double censored_fraction = 0.0;
};

struct CensorBracket {
    double target_fraction = 0.5;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<CensorProbe> trace;
};

// Bisect lambda for the point where the censored fraction at a fixed window
// cap crosses `target_fraction`: the divergence proxy for lambda_D.
CensorBracket censoring_bracket(const RadiusLaw& law, double target_fraction,
                                double window_cap, std::uint64_t n_reps,
                                double bracket_tol, RngStream stream,
                                int threads = 1);

struct EEventReport {
    double lambda = 0.0;
    int k_max = 0;
    std::uint64_t n_reps = 0;
    BernoulliEstimate truncated;   // event truncated at k_max, conservatively
    double tail_bound = 0.0;       // sum of P_hi[D(W_0) > k/2], k > k_max
    double lower_bound = 0.0;      // truncated.lo - tail_bound
    bool informative = false;
    BernoulliEstimate empty_i01;   // frequency of xi meeting neither I_0 nor I_1
};

// Lower bound on P[E_lambda] with E = (all D(W_k) <= k/2, k >= 2) and
// xi missing I_0 u I_1; the tail beyond k_max enters as a union bound of
// stationary diameter tails.
EEventReport estimate_E_event(double lambda, const RadiusLaw& law, int k_max,
                              std::uint64_t n_reps, RngStream stream,
                              int threads = 1);

} // namespace boolsim
