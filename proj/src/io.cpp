#include "confdiam/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "confdiam/error.hpp"

namespace confdiam {

namespace {

std::string trimmed(const std::string& line) {
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = line.find_last_not_of(" \t\r\n");
    return line.substr(first, last - first + 1);
}

// Next content line: skips blanks and # comments.
bool next_line(std::istream& in, std::string& out) {
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        out = trimmed(line);
        if (!out.empty()) return true;
    }
    return false;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_error, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) fail(Errc::io_error, "write to '" + path + "' failed");
}

ImmersedMesh load_off(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_error, "cannot open '" + path + "'");
    std::string line;
    if (!next_line(in, line) || line != "OFF")
        fail(Errc::parse_error, path + ": missing OFF header");
    if (!next_line(in, line)) fail(Errc::parse_error, path + ": missing count line");
    std::istringstream counts(line);
    long nv = 0, nf = 0, ne = 0;
    if (!(counts >> nv >> nf >> ne) || nv < 0 || nf < 0)
        fail(Errc::parse_error, path + ": bad count line");

    std::vector<Vec3> positions;
    positions.reserve(nv);
    for (long i = 0; i < nv; ++i) {
        if (!next_line(in, line)) fail(Errc::parse_error, path + ": truncated vertex list");
        std::istringstream ss(line);
        Vec3 p;
        if (!(ss >> p.x >> p.y >> p.z)) fail(Errc::parse_error, path + ": bad vertex line");
        positions.push_back(p);
    }
    std::vector<std::array<int, 3>> faces;
    faces.reserve(nf);
    for (long i = 0; i < nf; ++i) {
        if (!next_line(in, line)) fail(Errc::parse_error, path + ": truncated face list");
        std::istringstream ss(line);
        int n = 0;
        if (!(ss >> n) || n != 3)
            fail(Errc::parse_error, path + ": only triangular faces are supported");
        std::array<int, 3> f{};
        if (!(ss >> f[0] >> f[1] >> f[2])) fail(Errc::parse_error, path + ": bad face line");
        faces.push_back(f);
    }
    return ImmersedMesh::create(std::move(positions), std::move(faces));
}

void save_off(const ImmersedMesh& mesh, const std::string& path) {
    std::ostringstream out;
    out << "OFF\n" << mesh.vertex_count() << " " << mesh.face_count() << " 0\n";
    for (const Vec3& p : mesh.positions())
        out << format_double(p.x) << " " << format_double(p.y) << " " << format_double(p.z)
            << "\n";
    for (const auto& f : mesh.faces()) out << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
    write_text_file(path, out.str());
}

ImmersedMesh load_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_error, "cannot open '" + path + "'");
    std::vector<Vec3> positions;
    std::vector<std::array<int, 3>> faces;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trimmed(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream ss(t);
        std::string tag;
        ss >> tag;
        if (tag == "v") {
            Vec3 p;
            if (!(ss >> p.x >> p.y >> p.z))
                fail(Errc::parse_error, path + ":" + std::to_string(lineno) + ": bad vertex");
            positions.push_back(p);
        } else if (tag == "f") {
            std::vector<int> poly;
            std::string field;
            while (ss >> field) {
                // "i", "i/t", "i/t/n", "i//n" all start with the index.
                const long idx = std::strtol(field.c_str(), nullptr, 10);
                if (idx <= 0)
                    fail(Errc::parse_error,
                         path + ":" + std::to_string(lineno) + ": unsupported face index");
                poly.push_back(static_cast<int>(idx - 1));
            }
            if (poly.size() < 3)
                fail(Errc::parse_error, path + ":" + std::to_string(lineno) + ": short face");
            for (size_t k = 1; k + 1 < poly.size(); ++k)
                faces.push_back({poly[0], poly[k], poly[k + 1]});
        }
        // Everything else (vt, vn, usemtl, ...) is ignored.
    }
    return ImmersedMesh::create(std::move(positions), std::move(faces));
}

ImmersedMesh load_mesh(const std::string& path) {
    const auto dot = path.find_last_of('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "off" || ext == "OFF") return load_off(path);
    if (ext == "obj" || ext == "OBJ") return load_obj(path);
    fail(Errc::invalid_input, "unsupported mesh format '" + ext + "' (expected .off or .obj)");
}

std::vector<NamedCurve> load_curves(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::parse_error, path + ": " + e.what());
    }
    if (!j.contains("components") || !j["components"].is_array())
        fail(Errc::parse_error, path + ": expected a 'components' array");
    std::vector<NamedCurve> out;
    for (const auto& comp : j["components"]) {
        NamedCurve c;
        c.name = comp.value("name", "component" + std::to_string(out.size()));
        if (!comp.contains("points") || !comp["points"].is_array())
            fail(Errc::parse_error, path + ": component without 'points'");
        for (const auto& pt : comp["points"]) {
            if (!pt.is_array() || pt.size() != 3)
                fail(Errc::parse_error, path + ": points must be [x, y, z] triples");
            c.points.push_back({pt[0].get<double>(), pt[1].get<double>(), pt[2].get<double>()});
        }
        out.push_back(std::move(c));
    }
    return out;
}

void save_curves(std::span<const NamedCurve> curves, const std::string& path) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : curves) {
        nlohmann::json pts = nlohmann::json::array();
        for (const Vec3& p : c.points) pts.push_back({p.x, p.y, p.z});
        comps.push_back({{"name", c.name}, {"points", pts}});
    }
    write_text_file(path, nlohmann::json{{"components", comps}}.dump(2) + "\n");
}

}  // namespace confdiam
