#pragma once

#include <vector>

#include "webts/dataset.hpp"
#include "webts/synthgen.hpp"

namespace testing {

// Hand-built two-level "type" dataset honoring additivity exactly.
inline webts::SegmentedDataset small_type_dataset() {
    webts::SegmentedDataset ds;
    webts::Period p{2009, 1};
    for (int t = 0; t < 4; ++t) {
        ds.periods.push_back(p);
        p = p.next();
    }
    ds.dimensions = {{"type", {"new", "returning"}}};
    ds.visits = {{{100, 120, 110, 130}, {50, 60, 55, 65}}};
    ds.pageviews = {{{240, 290, 265, 310}, {260, 310, 285, 335}}};
    ds.total_pageviews = {500, 600, 550, 645};
    return ds;
}

// Single-dimension AR(1) synth config used across pipeline tests.
inline webts::SynthConfig basic_type_config(std::uint64_t seed, int periods,
                                            double noise_fraction) {
    webts::SynthConfig cfg;
    cfg.seed = seed;
    cfg.periods = periods;
    webts::DimensionSynthSpec dim;
    dim.name = "type";
    webts::LevelSynthSpec nv;
    nv.level = "new";
    nv.process = webts::VisitsProcessKind::Ar1;
    nv.mean = 900.0;
    nv.phi = 0.3;
    nv.innovation_sd = 120.0;
    nv.slope = 2.40;
    nv.intercept_share = 300.0;
    webts::LevelSynthSpec rv;
    rv.level = "returning";
    rv.process = webts::VisitsProcessKind::Ar1;
    rv.mean = 500.0;
    rv.phi = 0.3;
    rv.innovation_sd = 80.0;
    rv.slope = 5.22;
    rv.intercept_share = 200.0;
    // noise sd as a fraction of each level's mean page views
    nv.pageview_noise_sd = noise_fraction * (nv.slope * nv.mean + nv.intercept_share);
    rv.pageview_noise_sd = noise_fraction * (rv.slope * rv.mean + rv.intercept_share);
    dim.levels = {nv, rv};
    cfg.dimensions.push_back(dim);
    return cfg;
}

}  // namespace testing
