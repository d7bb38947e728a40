#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "webts/dataset.hpp"

namespace webts {

// Deterministic Gaussian source: mt19937_64 (fixed algorithm, identical
// streams on every platform) with an explicit Box-Muller transform. The
// standard library normal_distribution is avoided because its output is
// implementation-defined.
class PortableNormal {
  public:
    explicit PortableNormal(std::uint64_t seed) : rng_(seed) {}
    double uniform01();         // in (0,1)
    double gaussian();          // standard normal
    double gaussian(double mean, double sd) { return mean + sd * gaussian(); }

  private:
    std::mt19937_64 rng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

enum class VisitsProcessKind { Ar1, RandomWalk };

struct LevelSynthSpec {
    std::string level;
    VisitsProcessKind process = VisitsProcessKind::Ar1;
    double mean = 1000.0;           // AR(1) mean / random-walk start value
    double phi = 0.3;               // AR(1) coefficient, |phi| < 1
    double drift = 0.0;             // random-walk drift per period
    double innovation_sd = 0.0;
    double slope = 1.0;             // beta_s > 0: page views per visit
    double intercept_share = 0.0;   // this level's share of the global intercept
    double pageview_noise_sd = 0.0;
};

struct DimensionSynthSpec {
    std::string name;
    std::vector<LevelSynthSpec> levels;
};

struct SynthConfig {
    std::uint64_t seed = 0;
    int periods = 24;
    Period start{2008, 6};
    std::vector<DimensionSynthSpec> dimensions;

    void validate() const;  // throws configuration_error
};

// Draws per-level visit processes, forms page views as round(slope*visits +
// intercept share + noise) floored at visits, and reconciles dimensions 2..D
// to the first dimension's per-period totals so the dataset's additivity and
// cross-dimension invariants hold exactly.
SegmentedDataset generate(const SynthConfig& config);

// JSON document form of SynthConfig (schema documented in the README).
SynthConfig parse_synth_config(const std::string& json_text);
std::string synth_config_to_json(const SynthConfig& config);

}  // namespace webts
