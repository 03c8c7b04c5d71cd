// Command-line front end: configuration intake, one subcommand per analysis,
// machine-readable JSON/CSV output, and the full verification suite.
//
// Exit codes: 0 success, 1 domain-level failure (hypotheses, empty space,
// numerical trouble), 2 usage or parse error.

#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pentabend/geometry.hpp"
#include "pentabend/io.hpp"
#include "pentabend/kernels.hpp"
#include "pentabend/singularities.hpp"
#include "pentabend/transition.hpp"
#include "pentabend/verify.hpp"

namespace pb = pentabend;

namespace {

struct CliConfig {
    std::vector<double> r{3, 1, 4, 2, 3};
    std::optional<double> t;
    std::optional<std::array<double, 3>> t_range;  // start, stop, count
    std::uint64_t seed = 20240814;
    std::size_t samples = 100000;
    std::string out;  // empty = stdout
    std::string format = "json";
    std::map<std::string, double> tol;
    std::string target;  // classify positional
};

std::array<double, 3> parse_t_range(const std::string& text) {
    std::array<double, 3> out{};
    std::istringstream is(text);
    std::string part;
    int k = 0;
    while (std::getline(is, part, ':')) {
        if (k >= 3) throw pb::ContractViolation("--t-range wants start:stop:count");
        try {
            out[std::size_t(k++)] = std::stod(part);
        } catch (const std::exception&) {
            throw pb::ContractViolation("--t-range: cannot parse '" + part + "'");
        }
    }
    if (k != 3) throw pb::ContractViolation("--t-range wants start:stop:count");
    if (!(out[0] < out[1]) || !(out[2] >= 2))
        throw pb::ContractViolation("--t-range must be well-ordered with count >= 2");
    return out;
}

/* One subcommand's raw flag storage; resolve() folds defaults, the config
 * file and explicitly set flags (in that order) into a CliConfig. */
struct CommonFlags {
    std::vector<double> r;
    double t = 0;
    std::string t_range;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::string out, format, config, target;
    std::vector<std::string> tol_kv;

    CLI::Option *r_opt = nullptr, *t_opt = nullptr, *trange_opt = nullptr,
                *seed_opt = nullptr, *samples_opt = nullptr, *out_opt = nullptr,
                *format_opt = nullptr, *config_opt = nullptr, *tol_opt = nullptr;

    void wire(CLI::App* cmd, bool with_target = false) {
        config_opt = cmd->add_option("--config", config,
                                     "JSON config file (flags override it)");
        r_opt = cmd->add_option("--r", r, "side lengths r1,r2,...")->delimiter(',');
        t_opt = cmd->add_option("--t", t, "family parameter t");
        trange_opt = cmd->add_option("--t-range", t_range, "start:stop:count");
        samples_opt = cmd->add_option("--samples", samples, "sample count");
        seed_opt = cmd->add_option("--seed", seed, "random seed");
        out_opt = cmd->add_option("--out", out, "output path (default stdout)");
        format_opt = cmd->add_option("--format", format, "json|csv");
        tol_opt = cmd->add_option("--tol", tol_kv, "tolerance override NAME=VAL")
                      ->take_all();
        if (with_target)
            cmd->add_option("target", target,
                            "\"P\" or a configuration JSON file")
                ->required();
    }

    CliConfig resolve() const {
        CliConfig cfg;
        if (config_opt->count()) {
            pb::Json doc = pb::read_json_file(config);
            try {
                if (doc.contains("r")) cfg.r = doc["r"].get<std::vector<double>>();
                if (doc.contains("t")) cfg.t = doc["t"].get<double>();
                if (doc.contains("t_range")) {
                    auto v = doc["t_range"].get<std::vector<double>>();
                    if (v.size() != 3)
                        throw pb::ContractViolation("t_range wants [start, stop, count]");
                    cfg.t_range = {v[0], v[1], v[2]};
                }
                if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
                if (doc.contains("samples"))
                    cfg.samples = doc["samples"].get<std::size_t>();
                if (doc.contains("format")) cfg.format = doc["format"].get<std::string>();
                if (doc.contains("out")) cfg.out = doc["out"].get<std::string>();
                if (doc.contains("tol"))
                    for (const auto& [k, v] : doc["tol"].items())
                        cfg.tol[k] = v.get<double>();
            } catch (const nlohmann::json::exception& e) {
                throw pb::ContractViolation(std::string("config file: ") + e.what());
            }
        }
        if (r_opt->count()) cfg.r = r;
        if (t_opt->count()) cfg.t = t;
        if (trange_opt->count()) cfg.t_range = parse_t_range(t_range);
        if (seed_opt->count()) cfg.seed = seed;
        if (samples_opt->count()) cfg.samples = samples;
        if (out_opt->count()) cfg.out = out;
        if (format_opt->count()) cfg.format = format;
        for (const std::string& kv : tol_kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
                throw pb::ContractViolation("--tol wants NAME=VAL, got '" + kv + "'");
            double val;
            try {
                val = std::stod(kv.substr(eq + 1));
            } catch (const std::exception&) {
                throw pb::ContractViolation("--tol: cannot parse '" + kv + "'");
            }
            if (!(val > 0)) throw pb::ContractViolation("tolerances must be positive");
            cfg.tol[kv.substr(0, eq)] = val;
        }
        cfg.target = target;
        if (cfg.format != "json" && cfg.format != "csv")
            throw pb::ContractViolation("--format must be json or csv");
        if (cfg.t_range && !(cfg.t_range->at(0) < cfg.t_range->at(1) &&
                             cfg.t_range->at(2) >= 2))
            throw pb::ContractViolation("t_range must be well-ordered with count >= 2");
        return cfg;
    }
};

void emit(const CliConfig& cfg, const std::string& text) {
    if (cfg.out.empty())
        std::cout << text;
    else
        pb::write_text_file(cfg.out, text);
}

/* ------------------------------ subcommands ------------------------------ */

int run_validate(const CliConfig& cfg) {
    pb::SideLengths r(cfg.r);
    pb::LengthFlags f = pb::validate_side_lengths(r);
    const bool ok = f.theorem_ok.value_or(false);
    const bool pentagon = r.size() == 5;
    const double j = pentagon ? r[2] + r[3] - r[4] : 0;
    const double jmin = std::abs(r[0] - r[1]);
    const double jmax = r[0] + r[1];

    if (cfg.format == "json") {
        pb::Json doc = pb::json_document();
        doc["r"] = cfg.r;
        doc["generic"] = f.generic;
        doc["nonempty"] = f.nonempty;
        if (f.theorem_ok)
            doc["theorem_ok"] = *f.theorem_ok;
        else
            doc["theorem_ok"] = nullptr;
        if (pentagon) {
            doc["j"] = j;
            doc["J_min"] = jmin;
            doc["J_max"] = jmax;
        }
        emit(cfg, doc.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "# pentabend validate v1\n";
        os << "generic,nonempty,theorem_ok,j,J_min,J_max\n";
        os << (f.generic ? 1 : 0) << ',' << (f.nonempty ? 1 : 0) << ','
           << (ok ? 1 : 0) << ',';
        if (pentagon)
            os << pb::format_double(j) << ',' << pb::format_double(jmin) << ','
               << pb::format_double(jmax);
        else
            os << ",,";
        os << '\n';
        emit(cfg, os.str());
    }
    return ok ? 0 : 1;
}

int run_transition_times(const CliConfig& cfg) {
    pb::TheoremHypotheses h = pb::TheoremHypotheses::require(pb::SideLengths(cfg.r));
    pb::QuadraticData q = pb::quadratic_data(h);
    pb::FactoredF f = pb::factored_f(h);
    const double a = q.f_coeffs[0], b = q.f_coeffs[1], c = q.f_coeffs[2];
    auto root_res = [&](double t) {
        return std::abs((a * t + b) * t + c) /
               std::max({std::abs(a), std::abs(b), std::abs(c)});
    };

    if (cfg.format == "json") {
        pb::Json doc = pb::to_json(q);
        doc["residuals"] = {
            {"root_t_minus", root_res(q.t_minus)},
            {"root_t_plus", root_res(q.t_plus)},
            {"factorization_identity", f.max_rel_identity_err},
            {"delta_identity",
             std::abs(q.delta - 16.0 * h.r[2] * h.r[3] * h.r[4] * h.j) /
                 std::max(std::abs(q.delta), 1.0)},
        };
        emit(cfg, doc.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "# pentabend transition-times v1\n";
        os << "t_minus,t_plus,a,b,c,delta\n";
        os << pb::format_double(q.t_minus) << ',' << pb::format_double(q.t_plus)
           << ',' << pb::format_double(a) << ',' << pb::format_double(b) << ','
           << pb::format_double(c) << ',' << pb::format_double(q.delta) << '\n';
        emit(cfg, os.str());
    }
    return 0;
}

int run_sweep(const CliConfig& cfg) {
    pb::TheoremHypotheses h = pb::TheoremHypotheses::require(pb::SideLengths(cfg.r));
    pb::SweepOptions sopt;
    int num_t = 101;
    if (cfg.t_range) {
        sopt.t_start = cfg.t_range->at(0);
        sopt.t_stop = cfg.t_range->at(1);
        num_t = int(cfg.t_range->at(2));
    }
    if (auto it = cfg.tol.find("degenerate_window"); it != cfg.tol.end())
        sopt.degenerate_window = it->second;
    if (auto it = cfg.tol.find("disc_margin_rel"); it != cfg.tol.end())
        sopt.classify.disc_margin_rel = it->second;
    if (auto it = cfg.tol.find("fd_step_rel"); it != cfg.tol.end())
        sopt.classify.fd_step_rel = it->second;

    std::vector<pb::SweepRow> rows = pb::sweep(h, num_t, sopt);
    if (cfg.format == "csv")
        emit(cfg, pb::sweep_to_csv(rows));
    else
        emit(cfg, pb::sweep_to_json(rows).dump(2) + "\n");
    return 0;
}

int run_moment_image(const CliConfig& cfg) {
    pb::SideLengths r(cfg.r);
    const double t = cfg.t.value_or(0.5);
    std::vector<pb::MomentSample> samples =
        pb::moment_image_samples(r, t, cfg.samples, cfg.seed);

    std::optional<pb::PredictedVertices> pv;
    if (pb::TheoremHypotheses::check(r))
        pv = pb::predicted_vertices(pb::TheoremHypotheses::require(r));

    pb::Json vdoc = pb::json_document();
    if (pv) {
        pb::Json vj = pb::vertices_to_json(*pv);
        vdoc["vertices_34"] = vj["vertices_34"];
        vdoc["vertices_45"] = vj["vertices_45"];
    } else {
        vdoc["vertices_34"] = nullptr;  // vertex formulas need the hypotheses
        vdoc["vertices_45"] = nullptr;
    }

    if (cfg.format == "csv") {
        if (cfg.out.empty())
            throw pb::ContractViolation(
                "moment-image --format csv needs --out for the sample table");
        pb::write_text_file(cfg.out, pb::moment_samples_to_csv(samples));
        std::cout << vdoc.dump(2) << "\n";  // vertices still go to stdout
    } else {
        pb::Json doc = vdoc;
        doc["t"] = t;
        doc["seed"] = cfg.seed;
        pb::Json arr = pb::Json::array();
        for (const pb::MomentSample& s : samples)
            arr.push_back(pb::Json::array({s.J, s.H, s.ell34, s.ell45}));
        doc["columns"] = pb::Json::array({"J", "H", "ell34", "ell45"});
        doc["samples"] = std::move(arr);
        emit(cfg, doc.dump() + "\n");
    }
    return 0;
}

int run_classify(const CliConfig& cfg) {
    const double t = cfg.t.value_or(0.5);
    pb::Configuration rho;
    if (cfg.target == "P") {
        rho = pb::build_transition_point(
            pb::TheoremHypotheses::require(pb::SideLengths(cfg.r)));
    } else {
        pb::Json doc = pb::read_json_file(cfg.target);
        if (doc.is_object() && doc.contains("rho")) doc = doc["rho"];
        rho = pb::configuration_from_json(doc);
        if (rho.closure_defect().norm() > 1e-6 * rho.perimeter())
            throw pb::ContractViolation("configuration file: edges do not close up");
    }

    pb::ClassifyOptions copt;
    if (auto it = cfg.tol.find("fd_step_rel"); it != cfg.tol.end())
        copt.fd_step_rel = it->second;
    if (auto it = cfg.tol.find("disc_margin_rel"); it != cfg.tol.end())
        copt.disc_margin_rel = it->second;
    if (auto it = cfg.tol.find("root_margin_rel"); it != cfg.tol.end())
        copt.root_margin_rel = it->second;
    if (auto it = cfg.tol.find("rank_sv_rel"); it != cfg.tol.end())
        copt.rank_sv_rel = it->second;
    if (auto it = cfg.tol.find("fixed_surface_tol"); it != cfg.tol.end())
        copt.fixed_surface_tol = it->second;

    pb::SingularityReport rep = pb::classify_point(rho, t, copt);
    if (cfg.format == "json") {
        emit(cfg, pb::to_json(rep).dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "# pentabend classify v1\n";
        os << "rank,type,t,root1_re,root1_im,root2_re,root2_im\n";
        os << rep.rank << ',' << pb::to_string(rep.type) << ','
           << pb::format_double(rep.t) << ','
           << pb::format_double(rep.roots[0].real()) << ','
           << pb::format_double(rep.roots[0].imag()) << ','
           << pb::format_double(rep.roots[1].real()) << ','
           << pb::format_double(rep.roots[1].imag()) << '\n';
        emit(cfg, os.str());
    }
    return 0;
}

int run_verify(const CliConfig& cfg) {
    pb::VerifyOptions vopt;
    vopt.r = pb::SideLengths(cfg.r);
    vopt.seed = cfg.seed;
    vopt.tol = cfg.tol;
    std::vector<pb::SuiteResult> results = pb::run_all_suites(vopt);

    if (cfg.format == "json") {
        emit(cfg, pb::suites_to_json(results).dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "# pentabend verify v1\n";
        os << "name,pass,skipped,ms\n";
        for (const pb::SuiteResult& s : results)
            os << s.name << ',' << (s.pass ? 1 : 0) << ',' << (s.skipped ? 1 : 0)
               << ',' << pb::format_double(s.ms) << '\n';
        emit(cfg, os.str());
    }
    return pb::all_passed(results) ? 0 : 1;
}

/* Maps library failures onto the documented exit codes. */
int dispatch(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const pb::ContractViolation& e) {
        std::cerr << "pentabend: " << e.what() << "\n";
        return 2;
    } catch (const pb::InvalidLengths& e) {
        std::cerr << "pentabend: " << e.what() << "\n";
        return 2;
    } catch (const pb::UnsupportedSize& e) {
        std::cerr << "pentabend: " << e.what() << "\n";
        return 2;
    } catch (const pb::LevelOutOfRange& e) {
        std::cerr << "pentabend: " << e.what() << "\n";
        return 2;
    } catch (const pb::Error& e) {  // hypotheses, emptiness, numerics
        std::cerr << "pentabend: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "pentabend: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pentagon-space bending family: validation, transition times, "
                 "sweeps, moment images, classification, verification"};
    app.require_subcommand(1);
    int exit_code = 0;

    auto add_cmd = [&](const std::string& name, const std::string& desc,
                       int (*fn)(const CliConfig&), bool with_target = false) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        auto flags = std::make_shared<CommonFlags>();
        flags->wire(cmd, with_target);
        cmd->callback([flags, fn, &exit_code] {
            exit_code = dispatch([&] { return fn(flags->resolve()); });
        });
    };

    add_cmd("validate", "check side-length flags and theorem hypotheses",
            run_validate);
    add_cmd("transition-times", "closed-form t- and t+ with residuals",
            run_transition_times);
    add_cmd("sweep", "type sweep of the transition point over t", run_sweep);
    add_cmd("moment-image", "random moment-map samples and predicted vertices",
            run_moment_image);
    add_cmd("classify", "rank and singularity type of one configuration",
            run_classify, true);
    add_cmd("verify", "run all verification suites", run_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return exit_code;
}
