// Command-line front end: every subcommand parses arguments, calls the
// library, and writes one CSV file. No numerics live here.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stc/harness.hpp"
#include "stc/mindet.hpp"
#include "stc/siso.hpp"

namespace {

// "LO:STEP:HI" in dB, inclusive endpoints; a bare number is a single point.
std::vector<double> parse_snr_range(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    auto to_num = [&](const std::string& s) {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("--snr-db: bad number '" + s + "'");
        return v;
    };
    if (parts.size() == 1) return {to_num(parts[0])};
    if (parts.size() != 3)
        throw std::invalid_argument("--snr-db: expected LO:STEP:HI, got '" + text + "'");
    const double lo = to_num(parts[0]), step = to_num(parts[1]), hi = to_num(parts[2]);
    if (!(step > 0.0)) throw std::invalid_argument("--snr-db: step must be > 0");
    if (hi < lo) throw std::invalid_argument("--snr-db: HI must be >= LO");
    const double k = std::round((hi - lo) / step);
    if (std::abs(lo + k * step - hi) > 1e-6 * std::max(1.0, std::abs(hi)))
        throw std::invalid_argument("--snr-db: HI is not LO plus a whole number of steps");
    std::vector<double> grid;
    for (long i = 0; i <= static_cast<long>(k); ++i)
        grid.push_back(lo + static_cast<double>(i) * step);
    return grid;
}

std::string strip(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

// `--config FILE` supplies TOML-style `key = value` defaults for the long
// options of the active subcommand; explicit flags win. The file is expanded
// into ordinary flags before parsing, so required-option checks, type
// conversion, and precedence all go through the normal path.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
    auto given = [&](const std::string& flag) {
        for (const std::string& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config file: expected key=value, got '" + line + "'");
        const std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty())
            throw std::invalid_argument("config file: empty key in '" + line + "'");
        if (key == "config") continue;
        if (given("--" + key)) continue;
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

stc::CodeSpec code_from_name(const std::string& name) {
    if (name == "uncoded") return stc::CodeSpec::uncoded();
    if (name == "alamouti") return stc::CodeSpec::alamouti();
    if (name == "tilted") return stc::CodeSpec::tilted_qam();
    if (name == "rsa") return stc::CodeSpec::rsa();
    if (name == "golden") return stc::CodeSpec::golden();
    throw std::invalid_argument("--code: unknown code '" + name + "'");
}

stc::DecoderKind decoder_from_name(const std::string& name) {
    if (name == "ml") return stc::DecoderKind::Ml;
    if (name == "rsa-m1") return stc::DecoderKind::RsaM1;
    if (name == "rsa-m2") return stc::DecoderKind::RsaM2Guess;
    if (name == "rsa-unpruned") return stc::DecoderKind::RsaUnpruned;
    throw std::invalid_argument("--decoder: unknown decoder '" + name + "'");
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
    f << body;
    if (!f) throw std::runtime_error("failed writing output file '" + path + "'");
}

struct MerArgs {
    std::string code = "alamouti";
    std::string decoder = "ml";
    std::string snr = "";
    long trials = 0;
    std::uint64_t seed = 1;
    long max_errors = 400;
    int workers = 1;
    std::string out;
    std::string config;
};

void add_common_run_options(CLI::App* cmd, MerArgs& args) {
    cmd->add_option("--snr-db", args.snr, "SNR grid LO:STEP:HI in dB")->required();
    cmd->add_option("--trials", args.trials, "Monte Carlo trials per SNR point")->required();
    cmd->add_option("--seed", args.seed, "experiment seed");
    cmd->add_option("--max-errors", args.max_errors,
                    "stop a point after this many errors (0 = never)");
    cmd->add_option("--workers", args.workers, "worker threads (does not change results)");
    cmd->add_option("--out", args.out, "output CSV file")->required();
    cmd->add_option("--config", args.config, "key=value defaults; explicit flags win");
}

stc::ExperimentConfig make_config(const MerArgs& args) {
    stc::ExperimentConfig cfg;
    cfg.code = code_from_name(args.code);
    cfg.decoder = decoder_from_name(args.decoder);
    cfg.snr_grid_db = parse_snr_range(args.snr);
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    if (args.max_errors > 0) cfg.max_errors = args.max_errors;
    cfg.workers = args.workers;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"space-time code link simulator"};
    app.require_subcommand(1);

    // siso-curves
    std::string siso_snr = "-5:0.5:30";
    std::string siso_out, siso_cfg;
    CLI::App* siso = app.add_subcommand("siso-curves", "capacities and 4-PAM mutual information");
    siso->add_option("--snr-db", siso_snr, "SNR grid LO:STEP:HI in dB");
    siso->add_option("--out", siso_out, "output CSV file")->required();
    siso->add_option("--config", siso_cfg, "key=value defaults; explicit flags win");
    siso->callback([&] {
        std::string body = "snr_db,c_basic,c_rep,mi_ordinary,mi_scaled\n";
        for (double db : parse_snr_range(siso_snr)) {
            const double snr = std::pow(10.0, db / 10.0);
            body += stc::format_double(db) + ',' + stc::format_double(stc::awgn_capacity(snr)) +
                    ',' + stc::format_double(stc::repetition_capacity(snr)) + ',' +
                    stc::format_double(
                        stc::pam4_mutual_information(snr, stc::RepetitionScheme::Ordinary)) +
                    ',' +
                    stc::format_double(
                        stc::pam4_mutual_information(snr, stc::RepetitionScheme::Scaled)) +
                    '\n';
        }
        write_file(siso_out, body);
    });

    // mindet-sweep
    double sweep_lo = 0.0, sweep_hi = std::numbers::pi / 2.0, sweep_step = 0.002;
    std::string sweep_out, sweep_cfg;
    CLI::App* sweep = app.add_subcommand("mindet-sweep", "minimum determinant vs rotation angle");
    sweep->add_option("--lo", sweep_lo, "grid start (rad)");
    sweep->add_option("--hi", sweep_hi, "grid end (rad)");
    sweep->add_option("--step", sweep_step, "grid step (rad)");
    sweep->add_option("--out", sweep_out, "output CSV file")->required();
    sweep->add_option("--config", sweep_cfg, "key=value defaults; explicit flags win");
    sweep->callback([&] {
        const stc::SweepResult res = stc::optimize_theta(sweep_lo, sweep_hi, sweep_step);
        std::string body = "theta_rad,mindet\n";
        for (const stc::SweepPoint& p : res.points)
            body += stc::format_double(p.theta) + ',' + stc::format_double(p.mindet) + '\n';
        write_file(sweep_out, body);
        std::cout << "theta_opt=" << stc::format_double(res.theta_opt)
                  << " mindet=" << stc::format_double(res.mindet_opt) << "\n";
    });

    // mer
    MerArgs mer_args;
    CLI::App* mer = app.add_subcommand("mer", "message-error-rate curves");
    mer->add_option("--code", mer_args.code, "uncoded|alamouti|tilted|rsa|golden")->required();
    mer->add_option("--decoder", mer_args.decoder, "ml|rsa-m1|rsa-m2|rsa-unpruned")->required();
    add_common_run_options(mer, mer_args);
    mer->callback([&] {
        const stc::ExperimentConfig cfg = make_config(mer_args);
        const auto points = stc::run_mer(cfg);
        write_file(mer_args.out,
                   stc::mer_csv(points, stc::code_name(cfg.code.kind), decoder_name(cfg.decoder)));
    });

    // slicings
    MerArgs sl_args;
    sl_args.code = "rsa";
    CLI::App* sl = app.add_subcommand("slicings", "mean slicing counts of the rsa decoders");
    sl->add_option("--decoder", sl_args.decoder, "rsa-m1|rsa-m2")->required();
    add_common_run_options(sl, sl_args);
    sl->callback([&] {
        if (sl_args.decoder != "rsa-m1" && sl_args.decoder != "rsa-m2")
            throw std::invalid_argument("slicings: decoder must be rsa-m1 or rsa-m2");
        const stc::ExperimentConfig cfg = make_config(sl_args);
        const auto points = stc::run_mer(cfg);
        std::string body = "snr_db,mean_slicings\n";
        for (const stc::MerPoint& p : points)
            body += stc::format_double(p.snr_db) + ',' +
                    stc::format_double(p.mean_slicings.value_or(0.0)) + '\n';
        write_file(sl_args.out, body);
    });

    // outage
    MerArgs out_args;
    double rate = 4.0;
    CLI::App* outage = app.add_subcommand("outage", "Telatar outage probability");
    outage->add_option("--rate", rate, "rate threshold in bits/transmission")->required();
    add_common_run_options(outage, out_args);
    outage->callback([&] {
        if (rate < 0.0) throw std::invalid_argument("outage: rate must be >= 0");
        std::optional<long> max_errors;
        if (out_args.max_errors > 0) max_errors = out_args.max_errors;
        const auto points =
            stc::run_telatar_curve(rate, parse_snr_range(out_args.snr), out_args.trials,
                                   out_args.seed, max_errors, out_args.workers);
        write_file(out_args.out, stc::mer_csv(points, "telatar", "outage"));
    });

    try {
        std::vector<std::string> args = expand_config({argv + 1, argv + argc});
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
