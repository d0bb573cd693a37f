#pragma once
// ASCII OBJ export of a lattice mesh, bit-exact across runs: vertices as
// "v x y z" with 17 significant digits, quads as "f i j k l" with 1-based
// indices, vertex (n,m) at index n*(M+1) + m + 1 and quads oriented
// (n,m), (n+1,m), (n+1,m+1), (n,m+1).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "sym.hpp"

namespace psforge {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void appendG17(std::string& out, double v) {
    if (v == 0.0) v = 0.0;  // don't print "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}
}  // namespace detail

inline std::string objString(const SurfaceMesh& mesh) {
    std::string out;
    out.reserve(mesh.vertices.size() * 80);
    for (int n = 0; n <= mesh.N; ++n)
        for (int m = 0; m <= mesh.M; ++m) {
            const Vector3& v = mesh.at(n, m);
            out += "v ";
            detail::appendG17(out, v.x);
            out += ' ';
            detail::appendG17(out, v.y);
            out += ' ';
            detail::appendG17(out, v.z);
            out += '\n';
        }
    auto idx = [&](int n, int m) { return n * (mesh.M + 1) + m + 1; };
    char buf[96];
    for (int n = 0; n < mesh.N; ++n)
        for (int m = 0; m < mesh.M; ++m) {
            std::snprintf(buf, sizeof buf, "f %d %d %d %d\n", idx(n, m), idx(n + 1, m),
                          idx(n + 1, m + 1), idx(n, m + 1));
            out += buf;
        }
    return out;
}

// Write-to-temp-then-rename so a crashed job never leaves a half file.
inline void atomicWriteFile(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw IoError("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
}

inline void writeObj(const std::filesystem::path& path, const SurfaceMesh& mesh) {
    atomicWriteFile(path, objString(mesh));
}

}  // namespace psforge
