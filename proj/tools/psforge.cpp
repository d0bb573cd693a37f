// psforge: build and verify discrete pseudospherical surfaces from discrete
// potential data.  See README.md for the config schema.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <psforge/psforge.hpp>

namespace {

int runWithConfig(psforge::JobMode mode, const std::string& configPath, const std::string& outDir) {
    std::string text;
    {
        std::ifstream in(configPath, std::ios::binary);
        if (!in) {
            std::cerr << "psforge: cannot read config file '" << configPath << "'\n";
            return 3;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }

    psforge::JobConfig cfg;
    try {
        const auto doc = nlohmann::json::parse(text);
        cfg = psforge::parseJobConfig(doc, mode);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "psforge: config is not valid JSON: " << e.what() << "\n";
        return 2;
    } catch (const psforge::ConfigError& e) {
        std::cerr << "psforge: invalid config: " << e.what() << "\n";
        return 2;
    }

    try {
        return psforge::runJob(cfg, outDir);
    } catch (const psforge::ConfigError& e) {
        std::cerr << "psforge: invalid config: " << e.what() << "\n";
        return 2;
    } catch (const psforge::IoError& e) {
        std::cerr << "psforge: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "psforge: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete pseudospherical surfaces from discrete potentials"};
    app.require_subcommand(1);

    struct ModeSpec {
        psforge::JobMode mode;
        const char* name;
        const char* help;
    };
    const ModeSpec modes[] = {
        {psforge::JobMode::Generate, "generate", "build the surface mesh(es) and write OBJ files"},
        {psforge::JobMode::Verify, "verify", "run the full verification suite and write a JSON report"},
        {psforge::JobMode::Sweep, "sweep", "one OBJ per lambda in the list (associated family)"},
        {psforge::JobMode::OracleCompare, "oracle-compare",
         "compare frames and vertices against the direct lattice integrator"},
    };

    struct Invocation {
        psforge::JobMode mode{};
        std::string config;
        std::string out = ".";
        bool selected = false;
    } inv;

    for (const ModeSpec& spec : modes) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        sub->add_option("--config", inv.config, "path to the JSON job config")->required();
        sub->add_option("--out", inv.out, "output directory (default: current directory)");
        sub->callback([&inv, spec] {
            inv.mode = spec.mode;
            inv.selected = true;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (!inv.selected) {
        std::cerr << "psforge: no mode selected\n";
        return 2;
    }
    return runWithConfig(inv.mode, inv.config, inv.out);
}
