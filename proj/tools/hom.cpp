// hom — command-line driver for the two-photon interference simulator
//
//   hom sweep|panel|intensities|compare --config <path> [--out <path>]
//       [--panel a..f] [--traces <n>]
//
// Exit codes: 0 success, 1 config/usage error, 2 I/O error, 3 oracle deviation
// above threshold.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>

#include <CLI11.hpp>

#include "hom/cli.hpp"

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path + "'");
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << std::flush;
        if (!std::cout) throw IoError("failed writing to stdout");
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file '" + out_path + "'");
    out << text;
    out.close();
    if (!out) throw IoError("failed writing '" + out_path + "'");
}

hom::Execution execution_from_env() {
    const char* raw = std::getenv("HOM_THREADS");
    if (raw == nullptr) return {};
    const std::string_view s{raw};
    unsigned n = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc{} || ptr != s.data() + s.size() || n == 0) {
        throw hom::ConfigError("HOM_THREADS must be a positive integer, got '" + std::string(s) + "'");
    }
    return {n};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon (Hong-Ou-Mandel) interference simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string panel;
    std::size_t traces = 64;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Experiment config file")->required();
        sub->add_option("--out", out_path, "Write output here instead of stdout");
    };
    auto* sweep = app.add_subcommand("sweep", "Delay sweep of the ensemble coincidence rate (CSV)");
    add_common(sweep);
    sweep->add_option("--traces", traces, "Per-pair trace columns when keep_traces = true")->check(CLI::NonNegativeNumber);

    auto* panel_cmd = app.add_subcommand("panel", "Reproduce one of the six figure panels a..f (CSV)");
    add_common(panel_cmd);
    panel_cmd->add_option("--panel", panel, "Panel letter a..f")->required();
    panel_cmd->add_option("--traces", traces, "Per-pair trace columns for panel b")->check(CLI::NonNegativeNumber);

    auto* intensities = app.add_subcommand("intensities", "Ensemble-mean output port intensities (CSV)");
    add_common(intensities);

    auto* compare = app.add_subcommand("compare", "Deviation from the two-photon amplitude oracle (JSON)");
    add_common(compare);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return hom::cli::kUsage;
    }

    try {
        const hom::cli::RunOptions opts{execution_from_env(), traces};
        const auto cfg = hom::parse_config(read_file(config_path));

        if (sweep->parsed()) {
            emit(hom::cli::run_sweep(cfg, opts), out_path);
        } else if (panel_cmd->parsed()) {
            if (panel.size() != 1) throw hom::ConfigError("--panel expects a single letter a..f");
            emit(hom::cli::run_panel(cfg, panel[0], opts), out_path);
        } else if (intensities->parsed()) {
            emit(hom::cli::run_intensities(cfg, opts), out_path);
        } else if (compare->parsed()) {
            const auto outcome = hom::cli::run_compare(cfg, opts);
            emit(outcome.json, out_path);
            if (outcome.exit_code != hom::cli::kOk) {
                std::cerr << "hom: oracle deviation exceeds " << hom::cli::kCompareThreshold << '\n';
            }
            return outcome.exit_code;
        }
    } catch (const IoError& e) {
        std::cerr << "hom: " << e.what() << '\n';
        return hom::cli::kIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hom: " << e.what() << '\n';
        return hom::cli::kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "hom: " << e.what() << '\n';
        return hom::cli::kUsage;
    } catch (const std::bad_alloc&) {
        std::cerr << "hom: out of memory\n";
        return hom::cli::kUsage;
    }
    return hom::cli::kOk;
}
