#include "boolsim/report.hpp"

#include <fstream>
#include <sstream>

namespace boolsim {

Json to_json(const BernoulliEstimate& e) {
    return Json{{"successes", e.successes},
                {"trials", e.trials},
                {"point", e.point},
                {"ci_lo", e.lo},
                {"ci_hi", e.hi}};
}

Json to_json(const Rect& r) {
    return Json{{"lo", {r.lo.x, r.lo.y}}, {"hi", {r.hi.x, r.hi.y}}};
}

Json to_json(const Lemma1Layout& layout) {
    Json rects = Json::array();
    for (std::size_t i = 0; i < layout.rects.size(); ++i) {
        Json r = to_json(layout.rects[i]);
        r["id"] = i + 1;
        r["orientation"] =
            layout.orientation[i] == Orientation::Horizontal ? "horizontal"
                                                             : "vertical";
        rects.push_back(std::move(r));
    }
    Json disks = Json::array();
    for (std::size_t i = 0; i < layout.disks.size(); ++i) {
        disks.push_back(Json{{"id", i + 1},
                             {"center",
                              {layout.disks[i].center.x, layout.disks[i].center.y}},
                             {"radius", layout.disks[i].radius}});
    }
    return Json{{"alpha", layout.alpha},
                {"reach_factor", layout.reach_factor},
                {"parent_strip", to_json(layout.parent_strip)},
                {"band_lower", to_json(layout.band_lower)},
                {"band_upper", to_json(layout.band_upper)},
                {"rects", std::move(rects)},
                {"disks", std::move(disks)}};
}

Json to_json(const KnittingReport& rep) {
    Json junctions = Json::array();
    for (const JunctionCheck& j : rep.junctions) {
        junctions.push_back(
            Json{{"lower_horiz", j.lower_horiz},
                 {"vertical", j.vertical},
                 {"overlap_spans_vertical_width", j.overlap_spans_vertical_width},
                 {"overlap_spans_band_height", j.overlap_spans_band_height},
                 {"vertical_slab_inside_both_horizontals",
                  j.vertical_slab_inside_both_horizontals},
                 {"horizontals_match_band", j.horizontals_match_band},
                 {"pass", j.pass}});
    }
    return Json{{"all_pass", rep.all_pass}, {"junctions", std::move(junctions)}};
}

Json to_json(const LayoutInvariantReport& rep) {
    return Json{{"coordinates_ok", rep.coordinates_ok},
                {"mirror_ok", rep.mirror_ok},
                {"neighborhoods_in_half", rep.neighborhoods_in_half},
                {"neighborhoods_in_parent", rep.neighborhoods_in_parent},
                {"families_disjoint", rep.families_disjoint},
                {"disks_ok", rep.disks_ok},
                {"all_ok", rep.all_ok()},
                {"failures", rep.failures}};
}

Json to_json(const RecursionCheck& rc) {
    return Json{{"alpha", rc.alpha},
                {"lambda", rc.lambda},
                {"kappa", rc.kappa},
                {"n_reps", rc.n_reps},
                {"c1", kC1},
                {"lhs_F_10alpha", to_json(rc.lhs)},
                {"rhs_F_alpha", to_json(rc.f_small)},
                {"rhs_G_alpha", rc.g_small},
                {"rhs_hi", rc.rhs_hi},
                {"slack", rc.slack},
                {"verdict", verdict_name(rc.verdict)}};
}

Json to_json(const BoundChain& bc) {
    return Json{{"applicable", bc.applicable},
                {"reason", bc.reason},
                {"f_bounds", bc.f_bounds},
                {"sum_g", bc.sum_g},
                {"sum_f", bc.sum_f},
                {"coarse_total", bc.coarse_total}};
}

Json to_json(const ScaleTerm& t) {
    return Json{{"n", t.n},
                {"alpha", t.alpha},
                {"f_lo", t.f_lo},
                {"f_point", t.f_pt},
                {"f_hi", t.f_hi},
                {"f_kind", t.f_empirical ? "empirical" : "chain-bound"},
                {"f_trials", t.f_trials},
                {"g_value", t.g_value},
                {"g_kind", t.g_exact ? "exact" : "markov"},
                {"term", t.term}};
}

Json to_json(const SummabilityCertificate& cert) {
    Json scales = Json::array();
    for (const ScaleTerm& t : cert.scales) scales.push_back(to_json(t));
    return Json{{"base", cert.base},
                {"lambda", cert.lambda},
                {"kappa", cert.kappa},
                {"law", cert.law},
                {"n_empirical", cert.n_empirical},
                {"n_max", cert.n_max},
                {"n_reps", cert.n_reps},
                {"c1", kC1},
                {"c2", kC2},
                {"scales", std::move(scales)},
                {"chain_applicable", cert.chain_applicable},
                {"chain_reason", cert.chain_reason},
                {"chain_f0", cert.chain_f0},
                {"chain_sum_g", cert.chain_sum_g},
                {"tail_f", cert.tail_f},
                {"tail_g", cert.tail_g},
                {"total", cert.total},
                {"pass", cert.pass}};
}

Json to_json(const HJCheck& hj) {
    return Json{{"n", hj.n},
                {"alpha", hj.alpha},
                {"H", to_json(hj.h)},
                {"J_exact", hj.j},
                {"union_lo", hj.union_lo},
                {"union_hi", hj.union_hi},
                {"F", to_json(hj.f)},
                {"G_exact", hj.g},
                {"rhs_hi", hj.rhs_hi},
                {"verdict", verdict_name(hj.verdict)}};
}

Json to_json(const VacancyCertificate& vc) {
    Json head = Json::array();
    for (const HJCheck& hj : vc.head) head.push_back(to_json(hj));
    return Json{{"n_head", vc.n_head},
                {"n_reps_h", vc.n_reps_h},
                {"head", std::move(head)},
                {"scale_bounds", to_json(vc.scale_bounds)},
                {"union_upper", vc.union_upper},
                {"lower_bound", vc.lower_bound},
                {"informative", vc.informative},
                {"pass_half", vc.pass_half}};
}

Json to_json(const SliceReport& rep) {
    Json j{{"lambda", rep.lambda},
           {"d", rep.d},
           {"analytic_intensity", rep.analytic_intensity},
           {"direct_intensity", rep.direct_intensity},
           {"direct_intensity_se", rep.direct_intensity_se},
           {"direct_sigma2", rep.direct_sigma2},
           {"direct_sigma2_se", rep.direct_sigma2_se},
           {"direct_origin_cover", to_json(rep.direct_origin_cover)},
           {"brute_available", rep.brute_available}};
    if (rep.brute_available) {
        j["brute_intensity"] = rep.brute_intensity;
        j["brute_intensity_se"] = rep.brute_intensity_se;
        j["brute_sigma2"] = rep.brute_sigma2;
        j["brute_sigma2_se"] = rep.brute_sigma2_se;
        j["brute_origin_cover"] = to_json(rep.brute_origin_cover);
    }
    j["intensity_consistent"] = rep.intensity_consistent;
    j["sigma2_consistent"] = rep.sigma2_consistent;
    j["origin_consistent"] = rep.origin_consistent;
    return j;
}

Json to_json(const ThresholdEstimate& est) {
    Json scales = Json::array();
    for (const ScaleBracket& b : est.per_scale) {
        Json trace = Json::array();
        for (const ProbeRow& p : b.trace) {
            trace.push_back(Json{{"lambda", p.lambda},
                                 {"estimate", to_json(p.estimate)}});
        }
        scales.push_back(Json{{"scale", b.scale},
                              {"bracket_lo", b.lo},
                              {"bracket_hi", b.hi},
                              {"width", b.hi - b.lo},
                              {"trace", std::move(trace)}});
    }
    return Json{{"phase", est.phase == Phase::Occupied ? "occupied" : "vacant"},
                {"p_star", est.p_star},
                {"bracket_tol", est.bracket_tol},
                {"reps_per_probe", est.reps_per_probe},
                {"budget", est.budget},
                {"replicates_used", est.replicates_used},
                {"budget_exhausted", est.budget_exhausted},
                {"per_scale", std::move(scales)}};
}

Json to_json(const DiameterEstimate& est) {
    return Json{{"lambda", est.lambda},
                {"n_reps", est.n_reps},
                {"mean_diameter", est.mean_diameter},
                {"std_error", est.std_error},
                {"censored_fraction", est.censored_fraction},
                {"unreliable", est.unreliable},
                {"window_cap", est.window_cap}};
}

Json to_json(const CensorBracket& cb) {
    Json trace = Json::array();
    for (const CensorProbe& p : cb.trace)
        trace.push_back(
            Json{{"lambda", p.lambda}, {"censored_fraction", p.censored_fraction}});
    return Json{{"target_fraction", cb.target_fraction},
                {"bracket_lo", cb.lo},
                {"bracket_hi", cb.hi},
                {"trace", std::move(trace)}};
}

Json to_json(const EEventReport& rep) {
    return Json{{"lambda", rep.lambda},
                {"k_max", rep.k_max},
                {"n_reps", rep.n_reps},
                {"truncated", to_json(rep.truncated)},
                {"tail_bound", rep.tail_bound},
                {"lower_bound", rep.lower_bound},
                {"informative", rep.informative},
                {"empty_i01", to_json(rep.empty_i01)}};
}

Json grains_to_json(const GrainSet& set, bool include_grains) {
    Json j{{"count", set.grains.size()},
           {"intensity", set.intensity},
           {"ambient_dim", set.ambient_dim},
           {"seed", set.seed.seed},
           {"stream", set.seed.stream_id}};
    if (include_grains) {
        Json grains = Json::array();
        for (const Grain& g : set.grains)
            grains.push_back(Json{{"c", {g.center.x, g.center.y}}, {"r", g.radius}});
        j["grains"] = std::move(grains);
    }
    return j;
}

Json witness_to_json(const Rect& rect, const GrainSet& set,
                     const std::vector<int>& chain) {
    Json grains = Json::array();
    for (int idx : chain) {
        const Grain& g = set.grains[static_cast<std::size_t>(idx)];
        grains.push_back(Json{{"index", idx},
                              {"c", {g.center.x, g.center.y}},
                              {"r", g.radius}});
    }
    return Json{{"rect", to_json(rect)}, {"chain", std::move(grains)}};
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "lambda,trials,successes,p_hat,ci_lo,ci_hi\n";
    for (const SweepRow& r : rows) {
        os << fmt(r.lambda) << ',' << r.estimate.trials << ','
           << r.estimate.successes << ',' << fmt(r.estimate.point) << ','
           << fmt(r.estimate.lo) << ',' << fmt(r.estimate.hi) << "\n";
    }
    return os.str();
}

std::string certificate_csv(const SummabilityCertificate& cert) {
    std::ostringstream os;
    os << "n,alpha,f_lo,f_point,f_hi,f_kind,f_trials,g_value,g_kind,term\n";
    for (const ScaleTerm& t : cert.scales) {
        os << t.n << ',' << fmt(t.alpha) << ',' << fmt(t.f_lo) << ','
           << fmt(t.f_pt) << ',' << fmt(t.f_hi) << ','
           << (t.f_empirical ? "empirical" : "chain-bound") << ',' << t.f_trials
           << ',' << fmt(t.g_value) << ',' << (t.g_exact ? "exact" : "markov")
           << ',' << fmt(t.term) << "\n";
    }
    return os.str();
}

std::string threshold_csv(const ThresholdEstimate& est) {
    std::ostringstream os;
    os << "scale,lambda,trials,successes,p_hat,ci_lo,ci_hi\n";
    for (const ScaleBracket& b : est.per_scale) {
        for (const ProbeRow& p : b.trace) {
            os << fmt(b.scale) << ',' << fmt(p.lambda) << ',' << p.estimate.trials
               << ',' << p.estimate.successes << ',' << fmt(p.estimate.point)
               << ',' << fmt(p.estimate.lo) << ',' << fmt(p.estimate.hi) << "\n";
        }
    }
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

} // namespace boolsim
