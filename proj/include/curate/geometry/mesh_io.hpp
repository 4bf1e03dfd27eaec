#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "curate/geometry/mesh.hpp"

namespace curate::geometry {

enum class MeshFormat { Ply, Obj };
enum class PlyEncoding { Ascii, BinaryLittleEndian };

// Malformed input. `offset()` is the byte position where parsing stopped.
class ParseError : public MeshError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : MeshError(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Parses PLY (ascii, binary_little_endian, binary_big_endian) or OBJ.
// Polygons are fan-triangulated; triangles that repeat an index are dropped.
// Vertex colors (red/green/blue, uchar or float) and uvs are kept when present.
Mesh load_mesh(std::string_view bytes, MeshFormat format);

std::string write_ply(const Mesh& mesh, PlyEncoding encoding = PlyEncoding::BinaryLittleEndian);

// Format chosen from the extension: .ply, .obj for reading; .ply, .glb for writing.
Mesh load_mesh_file(const std::filesystem::path& path);
void save_mesh_file(const Mesh& mesh, const std::filesystem::path& path);

std::string read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace curate::geometry
