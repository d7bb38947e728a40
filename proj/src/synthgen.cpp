#include "webts/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <nlohmann/json.hpp>

#include "webts/errors.hpp"

namespace webts {

double PortableNormal::uniform01() {
    // 53-bit mantissa draw, strictly inside (0,1).
    const double u = (rng_() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
}

double PortableNormal::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

void SynthConfig::validate() const {
    if (periods < 12) throw configuration_error("synth config: periods must be >= 12");
    if (dimensions.empty()) throw configuration_error("synth config: no dimensions");
    for (const auto& dim : dimensions) {
        if (dim.levels.size() < 2)
            throw configuration_error("synth config: dimension '" + dim.name +
                                      "' needs >= 2 levels");
        for (std::size_t i = 0; i < dim.levels.size(); ++i)
            for (std::size_t j = i + 1; j < dim.levels.size(); ++j)
                if (dim.levels[i].level == dim.levels[j].level)
                    throw configuration_error("synth config: duplicate level '" +
                                              dim.levels[i].level + "' in dimension '" +
                                              dim.name + "'");
        for (const auto& lv : dim.levels) {
            if (lv.innovation_sd < 0.0 || lv.pageview_noise_sd < 0.0)
                throw configuration_error("synth config: negative sd for level '" + lv.level + "'");
            if (lv.slope <= 0.0)
                throw configuration_error("synth config: slope must be > 0 for level '" +
                                          lv.level + "'");
            if (lv.process == VisitsProcessKind::Ar1 && !(std::abs(lv.phi) < 1.0))
                throw configuration_error("synth config: AR coefficient must satisfy |phi| < 1");
        }
    }
}

namespace {

std::int64_t round_nonneg(double x) {
    return std::max<std::int64_t>(0, std::llround(x));
}

std::vector<std::int64_t> draw_visits(const LevelSynthSpec& lv, int periods, PortableNormal& rng) {
    std::vector<std::int64_t> out(periods);
    double value;
    if (lv.process == VisitsProcessKind::Ar1) {
        const double stat_sd =
            lv.innovation_sd > 0.0 ? lv.innovation_sd / std::sqrt(1.0 - lv.phi * lv.phi) : 0.0;
        value = lv.mean + (stat_sd > 0.0 ? rng.gaussian(0.0, stat_sd) : 0.0);
        out[0] = round_nonneg(value);
        for (int t = 1; t < periods; ++t) {
            value = lv.mean + lv.phi * (value - lv.mean) + rng.gaussian(0.0, lv.innovation_sd);
            out[t] = round_nonneg(value);
        }
    } else {
        value = lv.mean;
        out[0] = round_nonneg(value);
        for (int t = 1; t < periods; ++t) {
            value += lv.drift + rng.gaussian(0.0, lv.innovation_sd);
            out[t] = round_nonneg(value);
        }
    }
    return out;
}

std::int64_t draw_pageviews(const LevelSynthSpec& lv, std::int64_t visits, PortableNormal& rng) {
    const double noisy = lv.slope * static_cast<double>(visits) + lv.intercept_share +
                         (lv.pageview_noise_sd > 0.0 ? rng.gaussian(0.0, lv.pageview_noise_sd) : 0.0);
    // A visit implies at least one page view.
    return std::max(round_nonneg(noisy), visits);
}

// Integer allocation of `total` across levels proportional to non-negative
// weights, by largest remainder. Falls back to even shares on zero weights.
std::vector<std::int64_t> allocate(std::int64_t total, std::vector<double> weights) {
    const std::size_t m = weights.size();
    double wsum = 0.0;
    for (double& w : weights) {
        w = std::max(w, 0.0);
        wsum += w;
    }
    if (wsum <= 0.0) {
        weights.assign(m, 1.0);
        wsum = static_cast<double>(m);
    }
    std::vector<std::int64_t> shares(m);
    std::vector<std::pair<double, std::size_t>> remainders(m);
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double exact = static_cast<double>(total) * weights[i] / wsum;
        shares[i] = static_cast<std::int64_t>(std::floor(exact));
        assigned += shares[i];
        remainders[i] = {exact - std::floor(exact), i};
    }
    std::sort(remainders.begin(), remainders.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::int64_t left = total - assigned;
    for (std::size_t i = 0; left > 0; ++i, --left) shares[remainders[i % m].second] += 1;
    return shares;
}

}  // namespace

SegmentedDataset generate(const SynthConfig& config) {
    config.validate();
    PortableNormal rng(config.seed);

    SegmentedDataset ds;
    ds.periods.resize(config.periods);
    ds.periods[0] = config.start;
    for (int t = 1; t < config.periods; ++t) ds.periods[t] = ds.periods[t - 1].next();

    const std::size_t ndims = config.dimensions.size();
    ds.dimensions.resize(ndims);
    ds.visits.resize(ndims);
    ds.pageviews.resize(ndims);

    // Raw draws for every dimension, in declaration order.
    std::vector<std::vector<std::vector<std::int64_t>>> raw_visits(ndims);
    for (std::size_t d = 0; d < ndims; ++d) {
        const auto& dim = config.dimensions[d];
        ds.dimensions[d].name = dim.name;
        for (const auto& lv : dim.levels) {
            ds.dimensions[d].levels.push_back(lv.level);
            raw_visits[d].push_back(draw_visits(lv, config.periods, rng));
        }
    }

    // Dimension 0 is authoritative; its sums define the per-period totals.
    ds.visits[0] = raw_visits[0];
    for (std::size_t l = 0; l < config.dimensions[0].levels.size(); ++l) {
        std::vector<std::int64_t> pv(config.periods);
        for (int t = 0; t < config.periods; ++t)
            pv[t] = draw_pageviews(config.dimensions[0].levels[l], ds.visits[0][l][t], rng);
        ds.pageviews[0].push_back(std::move(pv));
    }

    std::vector<std::int64_t> total_visits(config.periods, 0);
    ds.total_pageviews.assign(config.periods, 0);
    for (int t = 0; t < config.periods; ++t) {
        for (const auto& lv : ds.visits[0]) total_visits[t] += lv[t];
        for (const auto& lv : ds.pageviews[0]) ds.total_pageviews[t] += lv[t];
    }

    // Remaining dimensions partition the same visitors: reconcile their level
    // visits to the shared visit total, then split the shared page-view total
    // according to each level's own linear model.
    for (std::size_t d = 1; d < ndims; ++d) {
        const auto& dim = config.dimensions[d];
        const std::size_t m = dim.levels.size();
        ds.visits[d].assign(m, std::vector<std::int64_t>(config.periods, 0));
        ds.pageviews[d].assign(m, std::vector<std::int64_t>(config.periods, 0));
        for (int t = 0; t < config.periods; ++t) {
            std::vector<double> vweights(m);
            for (std::size_t l = 0; l < m; ++l)
                vweights[l] = static_cast<double>(raw_visits[d][l][t]);
            const auto visits_t = allocate(total_visits[t], std::move(vweights));
            // Page views above the one-per-visit floor, shared out by the
            // level models' predicted excess.
            std::vector<double> pweights(m);
            for (std::size_t l = 0; l < m; ++l) {
                const auto& lv = dim.levels[l];
                const double predicted = lv.slope * static_cast<double>(visits_t[l]) +
                                         lv.intercept_share +
                                         (lv.pageview_noise_sd > 0.0
                                              ? rng.gaussian(0.0, lv.pageview_noise_sd)
                                              : 0.0);
                pweights[l] = predicted - static_cast<double>(visits_t[l]);
            }
            const std::int64_t excess = ds.total_pageviews[t] - total_visits[t];
            const auto extra = allocate(excess, std::move(pweights));
            for (std::size_t l = 0; l < m; ++l) {
                ds.visits[d][l][t] = visits_t[l];
                ds.pageviews[d][l][t] = visits_t[l] + extra[l];
            }
        }
    }
    return ds;
}

SynthConfig parse_synth_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw configuration_error(std::string("synth config: invalid JSON: ") + e.what());
    }
    try {
        SynthConfig cfg;
        cfg.seed = j.value("seed", 0ULL);
        cfg.periods = j.value("periods", 24);
        if (j.contains("start")) cfg.start = parse_period(j.at("start").get<std::string>());
        for (const auto& jd : j.at("dimensions")) {
            DimensionSynthSpec dim;
            dim.name = jd.at("name").get<std::string>();
            for (const auto& jl : jd.at("levels")) {
                LevelSynthSpec lv;
                lv.level = jl.at("level").get<std::string>();
                const std::string kind = jl.value("process", "ar1");
                if (kind == "ar1")
                    lv.process = VisitsProcessKind::Ar1;
                else if (kind == "random_walk")
                    lv.process = VisitsProcessKind::RandomWalk;
                else
                    throw configuration_error("synth config: unknown process '" + kind + "'");
                lv.mean = jl.value("mean", lv.mean);
                lv.phi = jl.value("phi", lv.phi);
                lv.drift = jl.value("drift", lv.drift);
                lv.innovation_sd = jl.value("innovation_sd", lv.innovation_sd);
                lv.slope = jl.value("slope", lv.slope);
                lv.intercept_share = jl.value("intercept_share", lv.intercept_share);
                lv.pageview_noise_sd = jl.value("pageview_noise_sd", lv.pageview_noise_sd);
                dim.levels.push_back(std::move(lv));
            }
            cfg.dimensions.push_back(std::move(dim));
        }
        cfg.validate();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw configuration_error(std::string("synth config: ") + e.what());
    }
}

std::string synth_config_to_json(const SynthConfig& cfg) {
    nlohmann::json j;
    j["seed"] = cfg.seed;
    j["periods"] = cfg.periods;
    j["start"] = cfg.start.str();
    j["dimensions"] = nlohmann::json::array();
    for (const auto& dim : cfg.dimensions) {
        nlohmann::json jd;
        jd["name"] = dim.name;
        jd["levels"] = nlohmann::json::array();
        for (const auto& lv : dim.levels) {
            nlohmann::json jl;
            jl["level"] = lv.level;
            jl["process"] = lv.process == VisitsProcessKind::Ar1 ? "ar1" : "random_walk";
            jl["mean"] = lv.mean;
            jl["phi"] = lv.phi;
            jl["drift"] = lv.drift;
            jl["innovation_sd"] = lv.innovation_sd;
            jl["slope"] = lv.slope;
            jl["intercept_share"] = lv.intercept_share;
            jl["pageview_noise_sd"] = lv.pageview_noise_sd;
            jd["levels"].push_back(std::move(jl));
        }
        j["dimensions"].push_back(std::move(jd));
    }
    return j.dump(2);
}

}  // namespace webts
