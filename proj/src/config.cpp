#include "spfem/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "spfem/mesh.hpp"

namespace spfem {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_double(std::string_view key, std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(std::string(key), "malformed number '" + std::string(text) + "'");
    }
    return v;
}

long parse_long(std::string_view key, std::string_view text) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(std::string(key), "malformed integer '" + std::string(text) + "'");
    }
    return v;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

template <typename T, typename Fn>
std::string join(const std::vector<T>& xs, Fn&& fmt) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) out += ',';
        out += fmt(xs[k]);
    }
    return out;
}

ProbePoint parse_probe(std::string_view key, std::string_view value) {
    const auto parts = split(value, ',');
    if (parts.size() != 2) throw ConfigError(std::string(key), "expected 'x,y'");
    ProbePoint p{parse_double(key, parts[0]), parse_double(key, parts[1])};
    if (std::abs(p.x) > 1.0 || std::abs(p.y) > 1.0) {
        throw ConfigError(std::string(key), "probe outside [-1,1]^2");
    }
    return p;
}

}  // namespace

std::string_view mode_name(RunMode m) {
    switch (m) {
        case RunMode::Errors: return "errors";
        case RunMode::Rates: return "rates";
        case RunMode::Green: return "green";
        case RunMode::Field: return "field";
        case RunMode::Interp: return "interp";
        case RunMode::Mms: return "mms";
    }
    return "unknown";
}

std::string_view problem_name(ProblemKind p) {
    return p == ProblemKind::Example51 ? "example51" : "mms";
}

ProblemSpec RunConfig::make_problem(double eps) const {
    return problem == ProblemKind::Example51 ? example_5_1(eps, alpha, beta)
                                             : mms_problem(eps, alpha, beta);
}

SolveOptions RunConfig::solve_options() const {
    SolveOptions o;
    o.tol = tol;
    o.max_iter = max_iter;
    o.method = method;
    return o;
}

std::string RunConfig::output_path() const {
    std::string name = output.empty()
                           ? std::string(mode_name(mode)) + (mode == RunMode::Field ? ".txt" : ".csv")
                           : output;
    if (const char* dir = std::getenv("SPFEM_OUTPUT_DIR"); dir && *dir) {
        const std::filesystem::path p(name);
        if (p.is_relative()) return (std::filesystem::path(dir) / p).string();
    }
    return name;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    const std::string k(key);
    value = trim(value);
    if (key == "mode") {
        for (RunMode m : {RunMode::Errors, RunMode::Rates, RunMode::Green, RunMode::Field,
                          RunMode::Interp, RunMode::Mms}) {
            if (mode_name(m) == value) {
                cfg.mode = m;
                return;
            }
        }
        throw ConfigError(k, "unknown mode '" + std::string(value) + "'");
    } else if (key == "problem") {
        if (value == "example51") cfg.problem = ProblemKind::Example51;
        else if (value == "mms") cfg.problem = ProblemKind::Mms;
        else throw ConfigError(k, "unknown problem '" + std::string(value) + "'");
    } else if (key == "eps") {
        cfg.eps_list.clear();
        for (auto part : split(value, ',')) {
            const double e = parse_double(key, part);
            if (!(e > 0.0 && e <= 1.0)) throw ConfigError(k, "eps must lie in (0, 1]");
            cfg.eps_list.push_back(e);
        }
    } else if (key == "N") {
        cfg.N_list.clear();
        for (auto part : split(value, ',')) {
            const long n = parse_long(key, part);
            if (n < 4 || n % 4 != 0) {
                throw ConfigError(k, "N must be a positive multiple of 4, got " + std::string(part));
            }
            cfg.N_list.push_back(static_cast<int>(n));
        }
    } else if (key == "alpha" || key == "beta") {
        const double v = parse_double(key, value);
        if (!(v > 0.0)) throw ConfigError(k, "must be positive");
        (key == "alpha" ? cfg.alpha : cfg.beta) = v;
    } else if (key == "quad_order") {
        const long q = parse_long(key, value);
        if (q < 2 || q > 4) throw ConfigError(k, "must be 2, 3 or 4");
        cfg.quad_order = static_cast<int>(q);
    } else if (key == "tol") {
        const double v = parse_double(key, value);
        if (!(v > 0.0)) throw ConfigError(k, "must be positive");
        cfg.tol = v;
    } else if (key == "max_iter") {
        const long v = parse_long(key, value);
        if (v < 1) throw ConfigError(k, "must be >= 1");
        cfg.max_iter = static_cast<int>(v);
    } else if (key == "method") {
        if (value == "gmres") cfg.method = KrylovMethod::Gmres;
        else if (value == "bicgstab") cfg.method = KrylovMethod::Bicgstab;
        else throw ConfigError(k, "unknown method '" + std::string(value) + "'");
    } else if (key == "threads") {
        const long v = parse_long(key, value);
        if (v < 1) throw ConfigError(k, "must be >= 1");
        cfg.threads = static_cast<unsigned>(v);
    } else if (key == "template") {
        try {
            cfg.layer_template = layer_kind_from_name(value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(k, e.what());
        }
    } else if (key == "output") {
        cfg.output = std::string(value);
    } else if (key.starts_with("probe_")) {
        Region r;
        try {
            r = region_from_name(key.substr(6));
        } catch (const std::invalid_argument&) {
            throw ConfigError(k, "unknown key");
        }
        cfg.probes[static_cast<int>(r)] = parse_probe(key, value);
    } else {
        throw ConfigError(k, "unknown key");
    }
}

void validate(const RunConfig& cfg) {
    if (cfg.eps_list.empty()) throw ConfigError("eps", "empty list");
    if (cfg.N_list.empty()) throw ConfigError("N", "empty list");
    for (double e : cfg.eps_list) {
        // eps = 1 has no layers and is only meaningful for the manufactured problem.
        if (e >= 1.0 && cfg.problem != ProblemKind::Mms) {
            throw ConfigError("eps", "eps must be < 1 for problem example51");
        }
    }
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    for (std::string_view line : split(text, '\n')) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(line), "expected key=value");
        }
        apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    validate(cfg);
    return cfg;
}

std::vector<std::string> describe(const RunConfig& cfg) {
    std::vector<std::string> lines{
        "mode=" + std::string(mode_name(cfg.mode)),
        "problem=" + std::string(problem_name(cfg.problem)),
        "eps=" + join(cfg.eps_list, format_double),
        "N=" + join(cfg.N_list, [](int n) { return std::to_string(n); }),
        "alpha=" + format_double(cfg.alpha),
        "beta=" + format_double(cfg.beta),
        "quad_order=" + std::to_string(cfg.quad_order),
        "tol=" + format_double(cfg.tol),
        "max_iter=" + std::to_string(cfg.max_iter),
        "method=" + std::string(cfg.method == KrylovMethod::Gmres ? "gmres" : "bicgstab"),
    };
    if (cfg.mode == RunMode::Interp) {
        lines.push_back("template=" + std::string(layer_kind_name(cfg.layer_template)));
    }
    for (Region r : kAllRegions) {
        if (const auto& p = cfg.probes[static_cast<int>(r)]) {
            lines.push_back("probe_" + std::string(region_name(r)) + "=" + format_double(p->x) +
                            "," + format_double(p->y));
        }
    }
    return lines;
}

}  // namespace spfem
