#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    qsl::cli::JobConfig cfg;
    std::string rect, y0;

    CLI::App app{"qsl: zeros, atom measures and reconstruction for exponential sums"};
    app.set_version_flag("--version", std::string(qsl::kVersion));
    app.add_option("command", cfg.command, "zeros | atoms | pair | verify-der | reconstruct | roundtrip | apcheck | growth")
        ->required();
    app.add_option("--input", cfg.input, "series JSON file");
    app.add_option("--preset", cfg.preset, "built-in series: sin, cos, cos3, threefreq");
    app.add_option("--q", cfg.q, "series JSON file (roundtrip)");
    app.add_option("--atoms", cfg.atoms, "atom measure JSON file");
    app.add_option("--rec", cfg.rec, "reconstruction JSON file");
    app.add_option("--zeros", cfg.zeros, "zero set JSON file");
    app.add_option("--rect", rect, "x_min,x_max,y_min,y_max");
    app.add_option("--tol", cfg.tol, "zero location tolerance")->capture_default_str();
    app.add_option("--tail-tol", cfg.tail_tol, "series truncation tolerance")->capture_default_str();
    app.add_option("--epsilon", cfg.epsilon, "almost-period tolerance")->capture_default_str();
    app.add_option("--y0", y0, "reconstruction line (default: automatic)");
    app.add_option("--output", cfg.output, "output file (default: standard output)");
    app.add_option("--format", cfg.format, "json | csv")->capture_default_str();
    app.add_option("--bump-center", cfg.bump_center, "test function centre")->capture_default_str();
    app.add_option("--bump-half-width", cfg.bump_half_width, "test function half-width")->capture_default_str();
    app.add_option("--zeta-im", cfg.zeta_im, "Im ζ for verify-der samples")->capture_default_str();
    app.add_option("--zeta-count", cfg.zeta_count, "number of verify-der samples")->capture_default_str();
    app.add_option("--tau-min", cfg.tau_min, "smallest candidate almost period")->capture_default_str();
    app.add_option("--tau-max", cfg.tau_max, "largest candidate almost period")->capture_default_str();
    app.add_option("--r-max", cfg.r_max, "growth grid radius (default: window reach)");
    app.footer("Transforms are evaluated only for |Im z| <= 10.\n"
               "QSL_THREADS limits the number of worker threads used by zero finding.\n"
               "Exit status: 0 success, 2 precondition failure, 3 numeric failure.");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (!rect.empty()) cfg.rect = qsl::cli::parse_rect(rect);
        if (!y0.empty()) cfg.y0 = std::stod(y0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return qsl::cli::run(cfg);
}
