// webts: segment-decomposition analysis of website traffic time series.
//
// Subcommands:
//   analyze  -- full pipeline, text or JSON report
//   adf      -- unit-root test on one dataset column
//   diagnose -- residual diagnostics and validation ledger only
//   synth    -- seeded synthetic dataset generation

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "webts/adf.hpp"
#include "webts/errors.hpp"
#include "webts/io.hpp"
#include "webts/pipeline.hpp"
#include "webts/synthgen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDataError = 2;
constexpr int kExitNumericError = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw webts::configuration_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw webts::configuration_error("cannot write '" + path + "'");
    out << content;
}

webts::SegmentedDataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw webts::configuration_error("cannot open '" + path + "'");
    return webts::parse_dataset(in);
}

// Column selector: "total", or "<dimension>/<level>/visits|pageviews".
webts::TimeSeries select_column(const webts::SegmentedDataset& ds, const std::string& name) {
    if (name == "total") return ds.total_series();
    std::vector<std::string> parts;
    std::istringstream ss(name);
    std::string part;
    while (std::getline(ss, part, '/')) parts.push_back(part);
    if (parts.size() != 3 || (parts[2] != "visits" && parts[2] != "pageviews"))
        throw webts::configuration_error(
            "column must be 'total' or '<dimension>/<level>/visits|pageviews'");
    const auto d = ds.dimension_index(parts[0]);
    if (!d) throw webts::configuration_error("no dimension '" + parts[0] + "'");
    const auto& levels = ds.dimensions[*d].levels;
    const auto it = std::find(levels.begin(), levels.end(), parts[1]);
    if (it == levels.end()) throw webts::configuration_error("no level '" + parts[1] + "'");
    const std::size_t l = static_cast<std::size_t>(it - levels.begin());
    return parts[2] == "visits" ? ds.visits_series(*d, l) : ds.pageviews_series(*d, l);
}

int run(int argc, char** argv) {
    CLI::App app{"Website page-view decomposition and validation"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Run the full decomposition pipeline");
    std::string input, dimension = "all", format = "text", plots_dir;
    webts::AnalysisConfig config;
    std::string adf_spec = "constant", adf_level = "10";
    analyze->add_option("--input", input, "Dataset CSV")->required();
    analyze->add_option("--dimension", dimension, "Dimension name or 'all'");
    analyze->add_option("--alpha", config.alpha, "Significance level");
    analyze->add_option("--r2-threshold", config.r2_threshold, "Step-1 R-squared threshold");
    analyze->add_option("--max-diff", config.max_diff_order, "Max differencing order");
    analyze->add_option("--adf-spec", adf_spec, "none|constant|constant+trend");
    analyze->add_option("--adf-lags", config.adf_lags, "ADF lag order");
    analyze->add_option("--adf-level", adf_level, "ADF decision level: 1|5|10");
    analyze->add_option("--bg-lags", config.bg_lags, "Breusch-Godfrey lag order");
    analyze->add_option("--format", format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("--plots", plots_dir, "Directory for per-dimension plot data");

    // adf
    auto* adf = app.add_subcommand("adf", "Augmented Dickey-Fuller test on one column");
    std::string adf_input, column, spec_text = "constant", level_text = "10";
    int lags = 0;
    adf->add_option("--input", adf_input, "Dataset CSV")->required();
    adf->add_option("--column", column, "total or <dimension>/<level>/visits|pageviews")
        ->required();
    adf->add_option("--spec", spec_text, "none|constant|constant+trend");
    adf->add_option("--lags", lags, "Lag order");
    adf->add_option("--level", level_text, "Decision level: 1|5|10");

    // diagnose
    auto* diagnose = app.add_subcommand("diagnose", "Diagnostics and ledger for one dimension");
    std::string diag_input, diag_dimension;
    diagnose->add_option("--input", diag_input, "Dataset CSV")->required();
    diagnose->add_option("--dimension", diag_dimension, "Dimension name")->required();

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    std::string synth_config_path, synth_out;
    std::uint64_t synth_seed = 0;
    bool seed_given = false;
    synth->add_option("--config", synth_config_path, "SynthConfig JSON")->required();
    synth->add_option("--seed", synth_seed, "Override the config's seed")
        ->each([&](const std::string&) { seed_given = true; });
    synth->add_option("--out", synth_out, "Output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed()) {
        config.adf_spec = webts::parse_determ_spec(adf_spec);
        config.adf_level = webts::parse_signif_level(adf_level);
        const auto ds = load_dataset(input);
        std::vector<std::string> names;
        if (dimension != "all") names.push_back(dimension);
        const auto report = webts::run_analysis(ds, config, names);
        std::cout << webts::render_report(
            report, format == "json" ? webts::ReportFormat::Json : webts::ReportFormat::Text);
        if (!plots_dir.empty()) {
            std::filesystem::create_directories(plots_dir);
            for (const auto& da : report.dimensions)
                if (da.composed)
                    write_file(plots_dir + "/" + da.dimension + ".csv",
                               webts::emit_plot_data(*da.composed, ds));
        }
        for (const auto& da : report.dimensions)
            if (!da.error.empty()) {
                std::cerr << "dimension " << da.dimension << " failed: " << da.error << "\n";
                return kExitNumericError;
            }
        return kExitOk;
    }

    if (adf->parsed()) {
        const auto ds = load_dataset(adf_input);
        const auto series = select_column(ds, column);
        const auto result = webts::adf_test(series, webts::parse_determ_spec(spec_text), lags,
                                            webts::parse_signif_level(level_text));
        std::cout << series.label << " ADF Test Statistic: " << result.statistic << "\n";
        for (const auto& [lv, cv] : result.critical_values)
            std::cout << "  " << webts::to_string(lv) << " Critical Value: " << cv << "\n";
        std::cout << (result.reject_unit_root ? "Reject unit root (stationary)"
                                              : "Fail to reject unit root (non-stationary)")
                  << " at the " << webts::to_string(result.level) << " level\n";
        return kExitOk;
    }

    if (diagnose->parsed()) {
        const auto ds = load_dataset(diag_input);
        webts::AnalysisConfig cfg;
        const auto report = webts::run_analysis(ds, cfg, {diag_dimension});
        const auto& da = report.dimensions.front();
        if (!da.error.empty()) {
            std::cerr << "dimension " << da.dimension << " failed: " << da.error << "\n";
            return kExitNumericError;
        }
        const auto& cm = *da.composed;
        const auto& fit = cm.intercept_fit;
        if (!fit.perfect_fit) {
            const auto bg = webts::breusch_godfrey(fit, cfg.bg_lags);
            std::cout << "Breusch-Godfrey Serial Correlation LM Test:\n"
                      << "  F-statistic " << bg.f_statistic << "  Prob. F(" << bg.f_dof1 << ","
                      << bg.f_dof2 << ") " << bg.f_p << "\n"
                      << "  Obs*R-squared " << bg.obs_r_squared << "  Prob. Chi-Square("
                      << bg.chi2_dof << ") " << bg.chi2_p << "\n";
            const auto bpg = webts::breusch_pagan_godfrey(cm.unrestricted_fit);
            std::cout << "Heteroskedasticity Test: Breusch-Pagan-Godfrey\n"
                      << "  F-statistic " << bpg.f_statistic << "  Prob. F(" << bpg.f_dof1 << ","
                      << bpg.f_dof2 << ") " << bpg.f_p << "\n"
                      << "  Obs*R-squared " << bpg.obs_r_squared << "  Prob. Chi-Square("
                      << bpg.chi2_dof << ") " << bpg.chi2_p << "\n"
                      << "  Scaled explained SS " << bpg.scaled_explained_ss
                      << "  Prob. Chi-Square(" << bpg.chi2_dof << ") " << bpg.scaled_p << "\n";
            const auto jb = webts::jarque_bera(fit.residuals);
            std::cout << "Jarque-Bera: " << jb.jb_statistic << " Prob: " << jb.p << "\n";
        } else {
            std::cout << "Perfect fit: residual diagnostics not applicable\n";
        }
        std::cout << "Validation ledger:\n";
        int i = 0;
        for (const auto& step : cm.ledger.steps)
            std::cout << "  " << ++i << ". " << step.name << ": "
                      << webts::to_string(step.verdict)
                      << (step.note.empty() ? "" : " (" + step.note + ")") << "\n";
        std::cout << "  Overall: " << webts::to_string(cm.ledger.overall) << "\n";
        return kExitOk;
    }

    if (synth->parsed()) {
        auto cfg = webts::parse_synth_config(read_file(synth_config_path));
        if (seed_given) cfg.seed = synth_seed;
        const auto ds = webts::generate(cfg);
        write_file(synth_out, webts::write_dataset_csv(ds));
        std::cout << "wrote " << ds.periods.size() << " periods x " << ds.dimensions.size()
                  << " dimension(s) to " << synth_out << "\n";
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const webts::dataset_validation_error& e) {
        std::cerr << "data validation error: " << e.what() << "\n";
        for (const auto& v : e.violations) std::cerr << "  - " << v.str() << "\n";
        return kExitDataError;
    } catch (const webts::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const webts::configuration_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericError;
    }
}
