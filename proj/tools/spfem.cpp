#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "spfem/config.hpp"
#include "spfem/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Galerkin FEM on Shishkin meshes for 2D turning-point problems"};
    app.set_version_flag("--version", std::string(spfem::kVersion));

    std::string config_file;
    app.add_option("-c,--config", config_file, "key=value config file (flags override it)")
        ->check(CLI::ExistingFile);

    const std::pair<const char*, const char*> keys[] = {
        {"mode", "errors | rates | green | field | interp | mms"},
        {"problem", "example51 | mms"},
        {"eps", "comma-separated eps values"},
        {"N", "comma-separated mesh parameters (multiples of 4)"},
        {"alpha", "lower bound for |b1| in the x transition point"},
        {"beta", "lower bound for c in the y transition point"},
        {"quad_order", "Gauss points per direction (2-4)"},
        {"tol", "relative residual tolerance"},
        {"max_iter", "Krylov iteration limit"},
        {"method", "gmres | bicgstab"},
        {"threads", "concurrent eps values in errors/rates mode"},
        {"template", "interp mode: smooth | interior_x | boundary_y | corner_xy | constant"},
        {"output", "output file (default <mode>.csv, field.txt)"},
        {"probe_coarse", "x,y of the coarse-region Green source"},
        {"probe_layer_x", "x,y of the layer_x Green source"},
        {"probe_layer_y", "x,y of the layer_y Green source"},
        {"probe_layer_xy", "x,y of the layer_xy Green source"}};
    // Every config key is also a flag of the same name.
    std::map<std::string, std::string> flags;
    for (const auto& [key, help] : keys) {
        app.add_option(std::string("--") + key, flags[key], help);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return spfem::kExitConfig;
    }

    std::string text;
    if (!config_file.empty()) {
        std::ifstream in(config_file);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str() + "\n";
    }
    for (const auto& [key, help] : keys) {
        if (app.count(std::string("--") + key) > 0) text += std::string(key) + "=" + flags[key] + "\n";
    }

    spfem::RunConfig cfg;
    try {
        cfg = spfem::parse_config(text);
    } catch (const spfem::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return spfem::kExitConfig;
    }
    return spfem::run(cfg, std::cerr);
}
