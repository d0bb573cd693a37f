#pragma once
// Configuration-driven jobs: one JSON document describes the potentials, the
// window, the lambda value(s), outputs and tolerances; the mode (generate /
// verify / sweep / oracle-compare) comes from the command line and must
// match the config when both are given.  All artifacts are rendered in
// memory first and written atomically at job end, so identical configs
// produce byte-identical outputs and failed jobs leave no partial files.
//
// Exit codes: 0 success, 1 residual failure, 2 invalid config, 3 I/O failure.

#include <json.hpp>

#include <optional>
#include <utility>

#include "obj_io.hpp"
#include "verify.hpp"

namespace psforge {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class JobMode { Generate, Verify, Sweep, OracleCompare };

inline const char* modeName(JobMode m) {
    switch (m) {
        case JobMode::Generate: return "generate";
        case JobMode::Verify: return "verify";
        case JobMode::Sweep: return "sweep";
        case JobMode::OracleCompare: return "oracle-compare";
    }
    return "?";
}

inline JobMode parseMode(const std::string& s) {
    if (s == "generate") return JobMode::Generate;
    if (s == "verify") return JobMode::Verify;
    if (s == "sweep") return JobMode::Sweep;
    if (s == "oracle-compare") return JobMode::OracleCompare;
    throw ConfigError("unknown mode '" + s + "' (expected generate, verify, sweep or oracle-compare)");
}

struct Tolerances {
    double geometric = 1e-9;
    double algebraic = 1e-10;
    double frameCompare = 1e-9;
    double vertexCompare = 1e-8;
};

struct JobConfig {
    JobMode mode = JobMode::Generate;
    bool revolution = false;
    std::vector<double> alpha, beta, p, q;  // normalized kind, resolved to the window
    double revQ = 0.0;                      // revolution kind
    int revEll = 1;
    int N = 1, M = 1;
    std::vector<double> lambdas;
    bool lambdaWasList = false;
    std::string meshName = "mesh";
    std::string reportName = "report.json";
    Tolerances tol;
};

// ------------------------------------------------------------- parsing

namespace detail {

using nlohmann::json;

inline void rejectUnknownKeys(const json& obj, std::initializer_list<const char*> known,
                              const char* where) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k) ok = true;
        if (!ok) throw ConfigError(std::string(where) + ": unknown key '" + item.key() + "'");
    }
}

inline double requireNumber(const json& v, const char* where) {
    if (!v.is_number()) throw ConfigError(std::string(where) + ": expected a number");
    return v.get<double>();
}

inline int requirePositiveInt(const json& v, const char* where) {
    if (!v.is_number_integer() || v.get<long long>() < 1)
        throw ConfigError(std::string(where) + ": expected a positive integer");
    return static_cast<int>(v.get<long long>());
}

// number -> constant table; array -> explicit table (must cover the window);
// {"cycle": [...]} -> periodic extension.
inline std::vector<double> resolveTable(const json& v, int len, const char* where) {
    if (v.is_number()) return std::vector<double>(len, v.get<double>());
    if (v.is_array()) {
        if (static_cast<int>(v.size()) < len)
            throw ConfigError(std::string(where) + ": table has " + std::to_string(v.size()) +
                              " entries but the window needs " + std::to_string(len));
        std::vector<double> out(len);
        for (int i = 0; i < len; ++i) out[i] = requireNumber(v[i], where);
        return out;
    }
    if (v.is_object()) {
        rejectUnknownKeys(v, {"cycle"}, where);
        if (!v.contains("cycle") || !v["cycle"].is_array() || v["cycle"].empty())
            throw ConfigError(std::string(where) + ": cycle must be a nonempty array");
        std::vector<double> cyc;
        for (const auto& e : v["cycle"]) cyc.push_back(requireNumber(e, where));
        std::vector<double> out(len);
        for (int i = 0; i < len; ++i) out[i] = cyc[i % cyc.size()];
        return out;
    }
    throw ConfigError(std::string(where) + ": expected number, array or {\"cycle\": [...]}");
}

inline std::string requireRelativeName(const json& v, const char* where) {
    if (!v.is_string() || v.get<std::string>().empty())
        throw ConfigError(std::string(where) + ": expected a nonempty string");
    const std::string s = v.get<std::string>();
    if (std::filesystem::path(s).is_absolute() || s.find("..") != std::string::npos)
        throw ConfigError(std::string(where) + ": must be a plain relative name");
    return s;
}

}  // namespace detail

inline JobConfig parseJobConfig(const nlohmann::json& doc, std::optional<JobMode> cliMode) {
    using detail::rejectUnknownKeys;
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    rejectUnknownKeys(doc, {"mode", "potentials", "window", "lambda", "output", "tolerances"}, "config");

    JobConfig cfg;
    if (doc.contains("mode")) {
        if (!doc["mode"].is_string()) throw ConfigError("mode: expected a string");
        cfg.mode = parseMode(doc["mode"].get<std::string>());
        if (cliMode && *cliMode != cfg.mode)
            throw ConfigError(std::string("mode mismatch: config says '") + modeName(cfg.mode) +
                              "' but the command line says '" + modeName(*cliMode) + "'");
    } else if (cliMode) {
        cfg.mode = *cliMode;
    } else {
        throw ConfigError("mode: missing (give it in the config or on the command line)");
    }

    if (!doc.contains("window") || !doc["window"].is_object())
        throw ConfigError("window: missing object with N and M");
    rejectUnknownKeys(doc["window"], {"N", "M"}, "window");
    if (!doc["window"].contains("N") || !doc["window"].contains("M"))
        throw ConfigError("window: both N and M are required");
    cfg.N = detail::requirePositiveInt(doc["window"]["N"], "window.N");
    cfg.M = detail::requirePositiveInt(doc["window"]["M"], "window.M");

    if (!doc.contains("potentials") || !doc["potentials"].is_object())
        throw ConfigError("potentials: missing object");
    const auto& pots = doc["potentials"];
    if (!pots.contains("kind") || !pots["kind"].is_string())
        throw ConfigError("potentials.kind: expected \"normalized\" or \"revolution\"");
    const std::string kind = pots["kind"].get<std::string>();
    if (kind == "normalized") {
        rejectUnknownKeys(pots, {"kind", "alpha", "beta", "p", "q"}, "potentials");
        for (const char* k : {"alpha", "beta", "p", "q"})
            if (!pots.contains(k))
                throw ConfigError(std::string("potentials.") + k + ": required for the normalized kind");
        cfg.alpha = detail::resolveTable(pots["alpha"], cfg.N, "potentials.alpha");
        cfg.p = detail::resolveTable(pots["p"], cfg.N, "potentials.p");
        cfg.beta = detail::resolveTable(pots["beta"], cfg.M, "potentials.beta");
        cfg.q = detail::resolveTable(pots["q"], cfg.M, "potentials.q");
    } else if (kind == "revolution") {
        rejectUnknownKeys(pots, {"kind", "q", "ell"}, "potentials");
        if (!pots.contains("q") || !pots.contains("ell"))
            throw ConfigError("potentials: the revolution kind needs q and ell");
        cfg.revolution = true;
        cfg.revQ = detail::requireNumber(pots["q"], "potentials.q");
        cfg.revEll = detail::requirePositiveInt(pots["ell"], "potentials.ell");
        if (!(std::abs(cfg.revQ) > 0.0) || std::abs(cfg.revQ) >= 2.0)
            throw ConfigError("potentials.q: need 0 < |q|/2 < 1");
    } else {
        throw ConfigError("potentials.kind: expected \"normalized\" or \"revolution\"");
    }

    if (!doc.contains("lambda")) throw ConfigError("lambda: missing");
    const auto& lam = doc["lambda"];
    auto pushLambda = [&](const nlohmann::json& v) {
        const double l = detail::requireNumber(v, "lambda");
        if (!(l > 0.0) || !std::isfinite(l)) throw ConfigError("lambda: values must be positive and finite");
        cfg.lambdas.push_back(l);
    };
    if (lam.is_array()) {
        cfg.lambdaWasList = true;
        if (lam.empty()) throw ConfigError("lambda: list must be nonempty");
        for (const auto& v : lam) pushLambda(v);
    } else {
        pushLambda(lam);
    }

    if (doc.contains("output")) {
        if (!doc["output"].is_object()) throw ConfigError("output: expected an object");
        rejectUnknownKeys(doc["output"], {"mesh", "report"}, "output");
        if (doc["output"].contains("mesh"))
            cfg.meshName = detail::requireRelativeName(doc["output"]["mesh"], "output.mesh");
        if (doc["output"].contains("report"))
            cfg.reportName = detail::requireRelativeName(doc["output"]["report"], "output.report");
    }

    if (doc.contains("tolerances")) {
        if (!doc["tolerances"].is_object()) throw ConfigError("tolerances: expected an object");
        rejectUnknownKeys(doc["tolerances"], {"geometric", "algebraic", "frame_compare", "vertex_compare"},
                          "tolerances");
        auto maybe = [&](const char* key, double& slot) {
            if (!doc["tolerances"].contains(key)) return;
            const double v = detail::requireNumber(doc["tolerances"][key], key);
            if (!(v > 0.0)) throw ConfigError(std::string("tolerances.") + key + ": must be positive");
            slot = v;
        };
        maybe("geometric", cfg.tol.geometric);
        maybe("algebraic", cfg.tol.algebraic);
        maybe("frame_compare", cfg.tol.frameCompare);
        maybe("vertex_compare", cfg.tol.vertexCompare);
    }

    if (cfg.mode == JobMode::Sweep && !cfg.lambdaWasList)
        throw ConfigError("sweep: lambda must be a list");
    if (cfg.mode == JobMode::OracleCompare && cfg.revolution)
        throw ConfigError("oracle-compare: needs normalized potentials (the oracle integrates the "
                          "Hirota lattice, which the revolution kind does not expose)");
    return cfg;
}

// ------------------------------------------------------------ execution

namespace detail {

inline nlohmann::ordered_json grid2d(const std::vector<double>& flat, int rows, int cols) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (int r = 0; r < rows; ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int c = 0; c < cols; ++c) row.push_back(flat[r * cols + c]);
        out.push_back(std::move(row));
    }
    return out;
}

inline std::string meshFileName(const JobConfig& cfg, std::size_t k) {
    if (!cfg.lambdaWasList) return cfg.meshName + ".obj";
    return cfg.meshName + "_" + std::to_string(k) + ".obj";
}

inline FrameGrid buildConfiguredFrames(const JobConfig& cfg, bool withAlternate) {
    if (cfg.revolution)
        return buildFrames(revolutionPotentials(cfg.revQ, cfg.revEll), cfg.N, cfg.M, withAlternate);
    const NormalizedPotentials pot(cfg.alpha, cfg.beta, cfg.p, cfg.q);
    return buildFrames(pot, cfg.N, cfg.M, withAlternate);
}

}  // namespace detail

// Runs the job and stages outputs under outDir (written atomically at the
// end).  Returns the process exit code: 0 on success, 1 when a verification
// or comparison exceeded its tolerance.
inline int runJob(const JobConfig& cfg, const std::filesystem::path& outDir) {
    using nlohmann::ordered_json;
    std::vector<std::pair<std::filesystem::path, std::string>> outputs;
    ordered_json report;
    report["mode"] = modeName(cfg.mode);
    report["window"] = {{"N", cfg.N}, {"M", cfg.M}};
    int exitCode = 0;

    try {
        switch (cfg.mode) {
            case JobMode::Generate:
            case JobMode::Sweep: {
                const FrameGrid frames = detail::buildConfiguredFrames(cfg, false);
                ordered_json meshes = ordered_json::array();
                for (std::size_t k = 0; k < cfg.lambdas.size(); ++k) {
                    const SurfaceMesh mesh = symMesh(frames, cfg.lambdas[k]);
                    const std::string name = detail::meshFileName(cfg, k);
                    outputs.emplace_back(outDir / name, objString(mesh));
                    meshes.push_back({{"lambda", cfg.lambdas[k]}, {"file", name}});
                }
                report["meshes"] = std::move(meshes);
                break;
            }
            case JobMode::Verify: {
                const FrameGrid frames = detail::buildConfiguredFrames(cfg, true);
                report["tolerances"] = {{"geometric", cfg.tol.geometric},
                                        {"algebraic", cfg.tol.algebraic}};
                double cop = 0, opp = 0, hir = 0, uni = 0, cross = 0;
                ordered_json per = ordered_json::array();
                for (double lambda : cfg.lambdas) {
                    const VerificationReport r = verifySurface(frames, lambda);
                    cop = std::max(cop, r.coplanarityMax);
                    opp = std::max(opp, r.oppositeEdgeMax);
                    hir = std::max(hir, r.hirotaResidualMax);
                    uni = std::max(uni, r.unitarityMax);
                    cross = std::max(cross, r.frameCrossCheckMax);
                    ordered_json entry;
                    entry["lambda"] = lambda;
                    entry["coplanarity_max"] = r.coplanarityMax;
                    entry["opposite_edge_max"] = r.oppositeEdgeMax;
                    entry["hirota_residual_max"] = r.hirotaResidualMax;
                    entry["unitarity_max"] = r.unitarityMax;
                    entry["frame_cross_check_max"] = r.frameCrossCheckMax;
                    entry["coplanarity"] = detail::grid2d(r.coplanarity, cfg.N - 1, cfg.M - 1);
                    entry["opposite_edge"] = detail::grid2d(r.oppositeEdge, cfg.N, cfg.M);
                    entry["hirota_residual"] = detail::grid2d(r.hirotaResidual, cfg.N, cfg.M);
                    entry["unitarity"] = detail::grid2d(r.unitarity, cfg.N + 1, cfg.M + 1);
                    entry["frame_cross_check"] = detail::grid2d(r.frameCrossCheck, cfg.N + 1, cfg.M + 1);
                    per.push_back(std::move(entry));
                }
                report["coplanarity_max"] = cop;
                report["opposite_edge_max"] = opp;
                report["hirota_residual_max"] = hir;
                report["unitarity_max"] = uni;
                report["frame_cross_check_max"] = cross;
                const bool pass = cop <= cfg.tol.geometric && opp <= cfg.tol.geometric &&
                                  hir <= cfg.tol.algebraic && uni <= cfg.tol.algebraic &&
                                  cross <= cfg.tol.algebraic;
                report["pass"] = pass;
                report["per_lambda"] = std::move(per);
                exitCode = pass ? 0 : 1;
                break;
            }
            case JobMode::OracleCompare: {
                const NormalizedPotentials pot(cfg.alpha, cfg.beta, cfg.p, cfg.q);
                const FrameGrid frames = buildFrames(pot, cfg.N, cfg.M, false);
                report["tolerances"] = {{"frame_compare", cfg.tol.frameCompare},
                                        {"vertex_compare", cfg.tol.vertexCompare}};
                double frameDev = 0, vertexDev = 0;
                ordered_json per = ordered_json::array();
                for (double lambda : cfg.lambdas) {
                    const OracleSurface oracle = hirotaOracleSurface(pot, cfg.N, cfg.M, lambda);
                    const SurfaceMesh mesh = symMesh(frames, lambda);
                    double fd = 0, vd = 0;
                    for (int n = 0; n <= cfg.N; ++n)
                        for (int m = 0; m <= cfg.M; ++m) {
                            fd = std::max(fd, maxAbsDiff(evalChain(frames.at(n, m), cplx{lambda}),
                                                         oracle.frameAt(n, m)));
                            vd = std::max(vd, maxAbsDiff(mesh.at(n, m), oracle.mesh.at(n, m)));
                        }
                    frameDev = std::max(frameDev, fd);
                    vertexDev = std::max(vertexDev, vd);
                    per.push_back({{"lambda", lambda},
                                   {"frame_deviation_max", fd},
                                   {"vertex_deviation_max", vd},
                                   {"path_deviation", oracle.pathDeviation}});
                }
                report["frame_deviation_max"] = frameDev;
                report["vertex_deviation_max"] = vertexDev;
                const bool pass = frameDev <= cfg.tol.frameCompare && vertexDev <= cfg.tol.vertexCompare;
                report["pass"] = pass;
                report["per_lambda"] = std::move(per);
                exitCode = pass ? 0 : 1;
                break;
            }
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());  // bad potentials caught at build time
    } catch (const std::out_of_range& e) {
        throw ConfigError(e.what());
    }

    outputs.emplace_back(outDir / cfg.reportName, report.dump(2) + "\n");
    for (const auto& [path, content] : outputs) atomicWriteFile(path, content);
    return exitCode;
}

}  // namespace psforge
