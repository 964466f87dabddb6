#pragma once

#include <string>
#include <vector>

#include "confdiam/mesh.hpp"
#include "confdiam/plateau.hpp"

namespace confdiam {

/// OFF is the canonical mesh format (written with 17 significant digits, so a
/// round trip is bit-exact). OBJ is import-only: v/f records, polygons
/// fan-triangulated, texture/normal indices ignored.
ImmersedMesh load_mesh(const std::string& path);  // dispatch on extension
ImmersedMesh load_off(const std::string& path);
ImmersedMesh load_obj(const std::string& path);
void save_off(const ImmersedMesh& mesh, const std::string& path);

/// curves.json: {"components": [{"name": str, "points": [[x,y,z], ...]}, ...]}
std::vector<NamedCurve> load_curves(const std::string& path);
void save_curves(std::span<const NamedCurve> curves, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace confdiam
