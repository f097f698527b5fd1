#include "spfem/runner.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "spfem/errorlab.hpp"
#include "spfem/greenfn.hpp"

namespace spfem {

namespace {

std::string num(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10e", v);
    return buf;
}

StudyOptions study_options(const RunConfig& cfg) {
    StudyOptions o;
    o.quad_order = cfg.quad_order;
    o.solver = cfg.solve_options();
    o.threads = cfg.threads;
    return o;
}

void write_header(std::ostream& out, const RunConfig& cfg) {
    out << "# spfem version=" << kVersion << '\n';
    out << "# mesh: x axis has 2N intervals (half-axis grid mirrored about x=0), y axis N\n";
    if (cfg.mode == RunMode::Errors || cfg.mode == RunMode::Rates) {
        out << "# double-mesh errors compared at the interior nodes of the N mesh\n";
    }
    for (const std::string& line : describe(cfg)) out << "# " << line << '\n';
}

void write_errors(std::ostream& out, const RunConfig& cfg, bool rates) {
    const ErrorTable table = error_table([&](double e) { return cfg.make_problem(e); },
                                         cfg.eps_list, cfg.N_list, study_options(cfg));
    if (!rates) {
        out << "eps,N,region,error\n";
        for (const ErrorRow& r : table.errors) {
            out << num(r.eps) << ',' << r.N << ',' << region_name(r.region) << ',' << sci(r.error)
                << '\n';
        }
    } else {
        out << "eps,N,region,rate\n";
        for (const RateRow& r : table.rates) {
            out << num(r.eps) << ',' << r.N << ',' << region_name(r.region) << ','
                << (r.rate ? sci(*r.rate) : std::string("undefined")) << '\n';
        }
    }
}

void write_green(std::ostream& out, const RunConfig& cfg) {
    GreenSweepOptions opts;
    opts.quad_order = cfg.quad_order;
    opts.solver = cfg.solve_options();
    opts.probe_override = cfg.probes;
    const auto reports = green_norm_sweep([&](double e) { return cfg.make_problem(e); },
                                          cfg.N_list, cfg.eps_list, opts);
    out << "eps,N,region,source_x,source_y,l2_norm,energy_norm\n";
    for (const GreenReport& r : reports) {
        out << num(r.eps) << ',' << r.N << ',' << region_name(r.region) << ',' << num(r.source_x)
            << ',' << num(r.source_y) << ',' << sci(r.l2_norm) << ',' << sci(r.energy_norm) << '\n';
    }
}

void write_field(std::ostream& out, const RunConfig& cfg) {
    const ProblemSpec spec = cfg.make_problem(cfg.eps_list.front());
    const TensorMesh mesh = mesh_for(spec, cfg.N_list.front());
    const FeSolution sol = solve_problem(spec, mesh, study_options(cfg));
    out << mesh.nx_nodes() << ' ' << mesh.ny_nodes() << '\n';
    for (std::size_t j = 0; j < mesh.ny_nodes(); ++j) {
        for (std::size_t i = 0; i < mesh.nx_nodes(); ++i) {
            out << num(mesh.x_axis()[i]) << ' ' << num(mesh.y_axis()[j]) << ' '
                << sci(sol.field.at(i, j)) << '\n';
        }
    }
}

void write_interp(std::ostream& out, const RunConfig& cfg) {
    out << "eps,N,region,error\n";
    for (double eps : cfg.eps_list) {
        const LayerTemplate tmpl = layer_template(cfg.layer_template, eps, cfg.alpha, cfg.beta);
        const auto errs = interp_error_study(tmpl, eps, cfg.alpha, cfg.beta, cfg.N_list);
        for (std::size_t k = 0; k < cfg.N_list.size(); ++k) {
            for (Region r : kAllRegions) {
                out << num(eps) << ',' << cfg.N_list[k] << ',' << region_name(r) << ','
                    << sci(at(errs[k], r)) << '\n';
            }
        }
    }
}

void write_mms(std::ostream& out, const RunConfig& cfg) {
    out << "eps,N,max_error,rate\n";
    for (double eps : cfg.eps_list) {
        const MmsResult res = mms_convergence(cfg.make_problem(eps), cfg.N_list, study_options(cfg));
        for (std::size_t k = 0; k < res.N.size(); ++k) {
            std::string rate;
            if (k < res.rates.size()) rate = res.rates[k] ? sci(*res.rates[k]) : "undefined";
            out << num(eps) << ',' << res.N[k] << ',' << sci(res.max_error[k]) << ',' << rate << '\n';
        }
    }
}

}  // namespace

std::string render(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.mode == RunMode::Mms && cfg.problem != ProblemKind::Mms) {
        throw ConfigError("problem", "mode=mms requires problem=mms");
    }
    std::ostringstream out;
    write_header(out, cfg);
    switch (cfg.mode) {
        case RunMode::Errors: write_errors(out, cfg, false); break;
        case RunMode::Rates: write_errors(out, cfg, true); break;
        case RunMode::Green: write_green(out, cfg); break;
        case RunMode::Field: write_field(out, cfg); break;
        case RunMode::Interp: write_interp(out, cfg); break;
        case RunMode::Mms: write_mms(out, cfg); break;
    }
    return out.str();
}

int run(const RunConfig& cfg, std::ostream& log) {
    std::string text;
    try {
        text = render(cfg);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        log << "run failed: " << e.what() << '\n';
        return kExitSolver;
    }

    const std::filesystem::path path = cfg.output_path();
    std::filesystem::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << text;
        if (!f) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            log << "run failed: cannot write " << path << '\n';
            return kExitSolver;
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        log << "run failed: cannot write " << path << '\n';
        return kExitSolver;
    }
    log << "wrote " << path.string() << '\n';
    return kExitOk;
}

}  // namespace spfem
