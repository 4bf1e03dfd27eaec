#include "curate/geometry/mesh_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "curate/geometry/gltf.hpp"

namespace curate::geometry {
namespace {

enum class ScalarType { Int8, UInt8, Int16, UInt16, Int32, UInt32, Float32, Float64 };

std::optional<ScalarType> scalar_type_from_name(std::string_view name) {
  if (name == "char" || name == "int8") return ScalarType::Int8;
  if (name == "uchar" || name == "uint8") return ScalarType::UInt8;
  if (name == "short" || name == "int16") return ScalarType::Int16;
  if (name == "ushort" || name == "uint16") return ScalarType::UInt16;
  if (name == "int" || name == "int32") return ScalarType::Int32;
  if (name == "uint" || name == "uint32") return ScalarType::UInt32;
  if (name == "float" || name == "float32") return ScalarType::Float32;
  if (name == "double" || name == "float64") return ScalarType::Float64;
  return std::nullopt;
}

bool is_integral(ScalarType t) { return t != ScalarType::Float32 && t != ScalarType::Float64; }

struct PlyProperty {
  std::string name;
  ScalarType type = ScalarType::Float32;
  bool is_list = false;
  ScalarType count_type = ScalarType::UInt8;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

enum class PlyFormat { Ascii, BinaryLE, BinaryBE };

// Reads numbers out of a PLY body, in whichever encoding the header declared.
class PlyBodyReader {
 public:
  PlyBodyReader(std::string_view bytes, std::size_t pos, PlyFormat format)
      : bytes_(bytes), pos_(pos), format_(format) {}

  double read(ScalarType type) {
    if (format_ == PlyFormat::Ascii) return read_ascii(type);
    return read_binary(type);
  }

  std::size_t offset() const { return pos_; }

 private:
  double read_ascii(ScalarType type) {
    while (pos_ < bytes_.size() && std::isspace(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
    if (pos_ >= bytes_.size()) throw ParseError("unexpected end of PLY body", pos_);
    const char* first = bytes_.data() + pos_;
    const char* last = bytes_.data() + bytes_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{}) throw ParseError("expected a number in PLY body", pos_);
    if (is_integral(type) && value != std::floor(value))
      throw ParseError("expected an integer in PLY body", pos_);
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  template <typename T>
  T take() {
    if (pos_ + sizeof(T) > bytes_.size()) throw ParseError("unexpected end of PLY body", pos_);
    std::array<char, sizeof(T)> raw;
    std::memcpy(raw.data(), bytes_.data() + pos_, sizeof(T));
    const bool file_big = format_ == PlyFormat::BinaryBE;
    if (file_big != (std::endian::native == std::endian::big)) std::reverse(raw.begin(), raw.end());
    T value;
    std::memcpy(&value, raw.data(), sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  double read_binary(ScalarType type) {
    switch (type) {
      case ScalarType::Int8: return take<std::int8_t>();
      case ScalarType::UInt8: return take<std::uint8_t>();
      case ScalarType::Int16: return take<std::int16_t>();
      case ScalarType::UInt16: return take<std::uint16_t>();
      case ScalarType::Int32: return take<std::int32_t>();
      case ScalarType::UInt32: return take<std::uint32_t>();
      case ScalarType::Float32: return take<float>();
      case ScalarType::Float64: return take<double>();
    }
    return 0.0;
  }

  std::string_view bytes_;
  std::size_t pos_;
  PlyFormat format_;
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view token) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

void append_fan(std::vector<Triangle>& out, const std::vector<std::uint32_t>& poly) {
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) out.push_back({poly[0], poly[k], poly[k + 1]});
}

Mesh load_ply(std::string_view bytes) {
  std::size_t pos = 0;
  auto next_line = [&](std::size_t& line_start) -> std::optional<std::string_view> {
    if (pos >= bytes.size()) return std::nullopt;
    line_start = pos;
    auto nl = bytes.find('\n', pos);
    std::string_view line;
    if (nl == std::string_view::npos) {
      line = bytes.substr(pos);
      pos = bytes.size();
    } else {
      line = bytes.substr(pos, nl - pos);
      pos = nl + 1;
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  };

  std::size_t line_start = 0;
  auto magic = next_line(line_start);
  if (!magic || *magic != "ply") throw ParseError("missing 'ply' magic", 0);

  std::optional<PlyFormat> format;
  std::vector<PlyElement> elements;
  bool header_done = false;
  while (auto line = next_line(line_start)) {
    auto tok = split_ws(*line);
    if (tok.empty()) continue;
    if (tok[0] == "comment" || tok[0] == "obj_info") continue;
    if (tok[0] == "end_header") {
      header_done = true;
      break;
    }
    if (tok[0] == "format") {
      if (tok.size() < 2) throw ParseError("malformed format line", line_start);
      if (tok[1] == "ascii") format = PlyFormat::Ascii;
      else if (tok[1] == "binary_little_endian") format = PlyFormat::BinaryLE;
      else if (tok[1] == "binary_big_endian") format = PlyFormat::BinaryBE;
      else throw ParseError("unknown PLY format '" + std::string(tok[1]) + "'", line_start);
    } else if (tok[0] == "element") {
      if (tok.size() != 3) throw ParseError("malformed element line", line_start);
      auto count = parse_number<std::size_t>(tok[2]);
      if (!count) throw ParseError("bad element count", line_start);
      elements.push_back({std::string(tok[1]), *count, {}});
    } else if (tok[0] == "property") {
      if (elements.empty()) throw ParseError("property before any element", line_start);
      PlyProperty prop;
      if (tok.size() == 5 && tok[1] == "list") {
        auto ct = scalar_type_from_name(tok[2]);
        auto it = scalar_type_from_name(tok[3]);
        if (!ct || !it || !is_integral(*ct)) throw ParseError("bad list property types", line_start);
        prop.is_list = true;
        prop.count_type = *ct;
        prop.type = *it;
        prop.name = tok[4];
      } else if (tok.size() == 3) {
        auto t = scalar_type_from_name(tok[1]);
        if (!t) throw ParseError("unknown property type '" + std::string(tok[1]) + "'", line_start);
        prop.type = *t;
        prop.name = tok[2];
      } else {
        throw ParseError("malformed property line", line_start);
      }
      elements.back().properties.push_back(std::move(prop));
    } else {
      throw ParseError("unexpected header keyword '" + std::string(tok[0]) + "'", line_start);
    }
  }
  if (!header_done) throw ParseError("PLY header has no end_header", pos);
  if (!format) throw ParseError("PLY header has no format line", pos);

  Mesh mesh;
  PlyBodyReader reader(bytes, pos, *format);
  for (const auto& element : elements) {
    if (element.name == "vertex") {
      std::optional<std::size_t> ix, iy, iz, ir, ig, ib, iu, iv;
      for (std::size_t p = 0; p < element.properties.size(); ++p) {
        const auto& name = element.properties[p].name;
        if (element.properties[p].is_list) continue;
        if (name == "x") ix = p;
        else if (name == "y") iy = p;
        else if (name == "z") iz = p;
        else if (name == "red" || name == "r") ir = p;
        else if (name == "green" || name == "g") ig = p;
        else if (name == "blue" || name == "b") ib = p;
        else if (name == "u" || name == "s" || name == "texture_u") iu = p;
        else if (name == "v" || name == "t" || name == "texture_v") iv = p;
      }
      if (!ix || !iy || !iz) throw ParseError("vertex element lacks x/y/z", reader.offset());
      const bool colored = ir && ig && ib;
      const bool textured = iu && iv;
      mesh.positions.reserve(element.count);
      std::vector<double> values(element.properties.size());
      for (std::size_t i = 0; i < element.count; ++i) {
        for (std::size_t p = 0; p < element.properties.size(); ++p) {
          const auto& prop = element.properties[p];
          if (prop.is_list) {
            auto n = static_cast<std::size_t>(reader.read(prop.count_type));
            for (std::size_t k = 0; k < n; ++k) reader.read(prop.type);
            values[p] = 0.0;
          } else {
            values[p] = reader.read(prop.type);
          }
        }
        mesh.positions.emplace_back(values[*ix], values[*iy], values[*iz]);
        if (colored) {
          auto channel = [&](std::size_t p) {
            const double v = values[p];
            return is_integral(element.properties[p].type) ? v / 255.0 : v;
          };
          mesh.colors.emplace_back(channel(*ir), channel(*ig), channel(*ib));
        }
        if (textured) mesh.uvs.emplace_back(values[*iu], values[*iv]);
      }
    } else if (element.name == "face") {
      std::optional<std::size_t> il;
      for (std::size_t p = 0; p < element.properties.size(); ++p) {
        const auto& prop = element.properties[p];
        if (prop.is_list && (prop.name == "vertex_indices" || prop.name == "vertex_index")) il = p;
      }
      if (!il) throw ParseError("face element lacks vertex_indices", reader.offset());
      std::vector<std::uint32_t> poly;
      for (std::size_t i = 0; i < element.count; ++i) {
        const std::size_t face_offset = reader.offset();
        for (std::size_t p = 0; p < element.properties.size(); ++p) {
          const auto& prop = element.properties[p];
          if (!prop.is_list) {
            reader.read(prop.type);
            continue;
          }
          auto n = static_cast<std::size_t>(reader.read(prop.count_type));
          if (p != *il) {
            for (std::size_t k = 0; k < n; ++k) reader.read(prop.type);
            continue;
          }
          poly.clear();
          for (std::size_t k = 0; k < n; ++k) {
            const double idx = reader.read(prop.type);
            if (idx < 0 || idx >= static_cast<double>(mesh.positions.size()))
              throw ParseError("face " + std::to_string(i) + " references missing vertex", face_offset);
            poly.push_back(static_cast<std::uint32_t>(idx));
          }
          if (n < 3) throw ParseError("face " + std::to_string(i) + " has fewer than 3 vertices", face_offset);
          append_fan(mesh.triangles, poly);
        }
      }
    } else {
      // Unknown element: consume it so later elements stay aligned.
      for (std::size_t i = 0; i < element.count; ++i) {
        for (const auto& prop : element.properties) {
          if (prop.is_list) {
            auto n = static_cast<std::size_t>(reader.read(prop.count_type));
            for (std::size_t k = 0; k < n; ++k) reader.read(prop.type);
          } else {
            reader.read(prop.type);
          }
        }
      }
    }
  }
  if (mesh.positions.empty()) throw EmptyMeshError();
  remove_repeated_index_triangles(mesh);
  validate(mesh);
  return mesh;
}

Mesh load_obj(std::string_view bytes) {
  Mesh mesh;
  std::vector<Vec2> texcoords;
  std::vector<Vec3> colors;
  bool any_color = false;
  std::vector<std::int64_t> vertex_uv;  // -1 when no uv referenced yet
  std::vector<std::uint32_t> poly;

  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::size_t line_start = pos;
    auto nl = bytes.find('\n', pos);
    std::string_view line = nl == std::string_view::npos ? bytes.substr(pos) : bytes.substr(pos, nl - pos);
    pos = nl == std::string_view::npos ? bytes.size() : nl + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;

    auto number = [&](std::string_view t) {
      auto v = parse_number<double>(t);
      if (!v) throw ParseError("bad number '" + std::string(t) + "'", line_start);
      return *v;
    };

    if (tok[0] == "v") {
      if (tok.size() != 4 && tok.size() != 7) throw ParseError("vertex needs 3 or 6 values", line_start);
      mesh.positions.emplace_back(number(tok[1]), number(tok[2]), number(tok[3]));
      if (tok.size() == 7) {
        colors.emplace_back(number(tok[4]), number(tok[5]), number(tok[6]));
        any_color = true;
      } else {
        colors.emplace_back(1.0, 1.0, 1.0);
      }
      vertex_uv.push_back(-1);
    } else if (tok[0] == "vt") {
      if (tok.size() < 3) throw ParseError("texture coordinate needs 2 values", line_start);
      texcoords.emplace_back(number(tok[1]), number(tok[2]));
    } else if (tok[0] == "f") {
      if (tok.size() < 4) throw ParseError("face needs at least 3 vertices", line_start);
      poly.clear();
      for (std::size_t k = 1; k < tok.size(); ++k) {
        auto corner = tok[k];
        auto slash = corner.find('/');
        auto resolve = [&](std::string_view t, std::size_t count) -> std::size_t {
          auto raw = parse_number<std::int64_t>(t);
          if (!raw || *raw == 0) throw ParseError("bad face index '" + std::string(t) + "'", line_start);
          std::int64_t idx = *raw > 0 ? *raw - 1 : static_cast<std::int64_t>(count) + *raw;
          if (idx < 0 || idx >= static_cast<std::int64_t>(count))
            throw ParseError("face index out of range '" + std::string(t) + "'", line_start);
          return static_cast<std::size_t>(idx);
        };
        const std::size_t vi = resolve(corner.substr(0, slash), mesh.positions.size());
        if (slash != std::string_view::npos) {
          auto rest = corner.substr(slash + 1);
          auto slash2 = rest.find('/');
          auto vt = rest.substr(0, slash2);
          if (!vt.empty()) {
            const std::size_t ti = resolve(vt, texcoords.size());
            if (vertex_uv[vi] < 0) vertex_uv[vi] = static_cast<std::int64_t>(ti);
          }
        }
        poly.push_back(static_cast<std::uint32_t>(vi));
      }
      append_fan(mesh.triangles, poly);
    } else if (tok[0] == "o" && tok.size() > 1 && mesh.name.empty()) {
      mesh.name = std::string(tok[1]);
    }
  }
  if (mesh.positions.empty()) throw EmptyMeshError();
  if (any_color) mesh.colors = std::move(colors);
  const bool any_uv = std::any_of(vertex_uv.begin(), vertex_uv.end(), [](auto i) { return i >= 0; });
  if (any_uv) {
    mesh.uvs.resize(mesh.positions.size(), Vec2::Zero());
    for (std::size_t i = 0; i < vertex_uv.size(); ++i)
      if (vertex_uv[i] >= 0) mesh.uvs[i] = texcoords[static_cast<std::size_t>(vertex_uv[i])];
  }
  remove_repeated_index_triangles(mesh);
  validate(mesh);
  return mesh;
}

template <typename T>
void put_le(std::string& out, T value) {
  std::array<char, sizeof(T)> raw;
  std::memcpy(raw.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
  out.append(raw.data(), raw.size());
}

std::uint8_t to_byte(double channel) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(channel * 255.0), 0L, 255L));
}

}  // namespace

Mesh load_mesh(std::string_view bytes, MeshFormat format) {
  return format == MeshFormat::Ply ? load_ply(bytes) : load_obj(bytes);
}

std::string write_ply(const Mesh& mesh, PlyEncoding encoding) {
  std::ostringstream header;
  header << "ply\n"
         << "format " << (encoding == PlyEncoding::Ascii ? "ascii" : "binary_little_endian") << " 1.0\n";
  if (!mesh.name.empty()) header << "comment name " << mesh.name << "\n";
  header << "element vertex " << mesh.vertex_count() << "\n"
         << "property double x\nproperty double y\nproperty double z\n";
  if (mesh.has_colors()) header << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  if (mesh.has_uvs()) header << "property float u\nproperty float v\n";
  header << "element face " << mesh.face_count() << "\n"
         << "property list uchar uint vertex_indices\n"
         << "end_header\n";

  std::string out = header.str();
  if (encoding == PlyEncoding::Ascii) {
    std::ostringstream body;
    body.precision(17);
    for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
      const auto& p = mesh.positions[i];
      body << p.x() << ' ' << p.y() << ' ' << p.z();
      if (mesh.has_colors()) {
        const auto& c = mesh.colors[i];
        body << ' ' << int(to_byte(c.x())) << ' ' << int(to_byte(c.y())) << ' ' << int(to_byte(c.z()));
      }
      if (mesh.has_uvs()) body << ' ' << float(mesh.uvs[i].x()) << ' ' << float(mesh.uvs[i].y());
      body << '\n';
    }
    for (const auto& t : mesh.triangles) body << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    out += body.str();
    return out;
  }

  for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
    const auto& p = mesh.positions[i];
    put_le(out, p.x());
    put_le(out, p.y());
    put_le(out, p.z());
    if (mesh.has_colors()) {
      const auto& c = mesh.colors[i];
      put_le(out, to_byte(c.x()));
      put_le(out, to_byte(c.y()));
      put_le(out, to_byte(c.z()));
    }
    if (mesh.has_uvs()) {
      put_le(out, static_cast<float>(mesh.uvs[i].x()));
      put_le(out, static_cast<float>(mesh.uvs[i].y()));
    }
  }
  for (const auto& t : mesh.triangles) {
    put_le(out, std::uint8_t{3});
    for (auto idx : t) put_le(out, idx);
  }
  return out;
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_bytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Mesh load_mesh_file(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  MeshFormat format;
  if (ext == ".ply" || ext == ".PLY") format = MeshFormat::Ply;
  else if (ext == ".obj" || ext == ".OBJ") format = MeshFormat::Obj;
  else throw MeshError("unsupported mesh extension '" + ext + "'");
  Mesh mesh = load_mesh(read_file_bytes(path), format);
  if (mesh.name.empty()) mesh.name = path.stem().string();
  return mesh;
}

void save_mesh_file(const Mesh& mesh, const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".ply") write_file_bytes(path, write_ply(mesh));
  else if (ext == ".glb") write_file_bytes(path, write_glb(mesh));
  else throw MeshError("unsupported output extension '" + ext + "'");
}

}  // namespace curate::geometry
