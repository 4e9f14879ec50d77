#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "flowlab/engine.hpp"

int main(int argc, char** argv) {
    CLI::App app{"flowlab: two-scale laboratory for area-preserving curvature flow of rectangles"};
    std::string mode, config_path, out_dir = ".";
    std::vector<std::string> sets;
    app.add_option("mode", mode,
                   "continuum-flow | limit-ode | discrete-symmetric | discrete-rectangular | "
                   "steiner-audit | oracle-verify | pinning-map | convergence-study")
        ->required();
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--set", sets, "override a config field, dotted key=value")->take_all();
    app.add_option("--out", out_dir, "output directory");
    CLI11_PARSE(app, argc, argv);

    using flowlab::engine::Config;
    Config cfg = flowlab::engine::default_config();
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw flowlab::engine::ValidationError("cannot read config: " + config_path);
            Config user = Config::parse(in);
            for (auto& [k, v] : user.items()) cfg[k] = v;
        }
        cfg["mode"] = mode;
        for (const std::string& kv : sets) flowlab::engine::apply_override(cfg, kv);
        Config summary = flowlab::engine::run(cfg, out_dir);
        std::cout << summary.dump(2) << "\n";
    } catch (const flowlab::engine::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical guard failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
