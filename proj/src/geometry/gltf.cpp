#include "curate/geometry/gltf.hpp"

#include <bit>
#include <cstring>

#include "json.hpp"

namespace curate::geometry {
namespace {

constexpr std::uint32_t kGlbMagic = 0x46546C67;  // "glTF"
constexpr std::uint32_t kChunkJson = 0x4E4F534A;
constexpr std::uint32_t kChunkBin = 0x004E4942;
constexpr int kFloat = 5126;
constexpr int kUnsignedInt = 5125;
constexpr int kArrayBuffer = 34962;
constexpr int kElementArrayBuffer = 34963;

template <typename T>
void put(std::string& out, T value) {
  static_assert(std::endian::native == std::endian::little, "glb writer assumes little-endian host");
  char raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  out.append(raw, sizeof(T));
}

void pad(std::string& s, char fill) {
  while (s.size() % 4 != 0) s.push_back(fill);
}

}  // namespace

std::string write_glb(const Mesh& mesh) {
  using nlohmann::json;
  std::string bin;
  json buffer_views = json::array();
  json accessors = json::array();
  json attributes = json::object();

  auto add_view = [&](std::size_t offset, std::size_t length, int target) {
    buffer_views.push_back({{"buffer", 0}, {"byteOffset", offset}, {"byteLength", length}, {"target", target}});
    return buffer_views.size() - 1;
  };

  // POSITION
  {
    const auto offset = bin.size();
    Eigen::Vector3f lo = Eigen::Vector3f::Constant(0.0f), hi = lo;
    bool first = true;
    for (const auto& p : mesh.positions) {
      const Eigen::Vector3f f = p.cast<float>();
      if (first) {
        lo = hi = f;
        first = false;
      }
      lo = lo.cwiseMin(f);
      hi = hi.cwiseMax(f);
      put(bin, f.x());
      put(bin, f.y());
      put(bin, f.z());
    }
    auto view = add_view(offset, bin.size() - offset, kArrayBuffer);
    accessors.push_back({{"bufferView", view},
                         {"componentType", kFloat},
                         {"count", mesh.vertex_count()},
                         {"type", "VEC3"},
                         {"min", {lo.x(), lo.y(), lo.z()}},
                         {"max", {hi.x(), hi.y(), hi.z()}}});
    attributes["POSITION"] = accessors.size() - 1;
  }
  if (mesh.has_colors()) {
    const auto offset = bin.size();
    for (const auto& c : mesh.colors) {
      put(bin, static_cast<float>(c.x()));
      put(bin, static_cast<float>(c.y()));
      put(bin, static_cast<float>(c.z()));
    }
    auto view = add_view(offset, bin.size() - offset, kArrayBuffer);
    accessors.push_back({{"bufferView", view}, {"componentType", kFloat}, {"count", mesh.vertex_count()}, {"type", "VEC3"}});
    attributes["COLOR_0"] = accessors.size() - 1;
  }
  if (mesh.has_uvs()) {
    const auto offset = bin.size();
    for (const auto& uv : mesh.uvs) {
      put(bin, static_cast<float>(uv.x()));
      put(bin, static_cast<float>(uv.y()));
    }
    auto view = add_view(offset, bin.size() - offset, kArrayBuffer);
    accessors.push_back({{"bufferView", view}, {"componentType", kFloat}, {"count", mesh.vertex_count()}, {"type", "VEC2"}});
    attributes["TEXCOORD_0"] = accessors.size() - 1;
  }

  json primitive = {{"attributes", attributes}, {"mode", 4}};
  if (!mesh.triangles.empty()) {
    const auto offset = bin.size();
    for (const auto& t : mesh.triangles)
      for (auto idx : t) put(bin, idx);
    auto view = add_view(offset, bin.size() - offset, kElementArrayBuffer);
    accessors.push_back({{"bufferView", view}, {"componentType", kUnsignedInt}, {"count", mesh.face_count() * 3}, {"type", "SCALAR"}});
    primitive["indices"] = accessors.size() - 1;
  }
  pad(bin, '\0');

  json doc = {
      {"asset", {{"version", "2.0"}, {"generator", "curate"}}},
      {"scene", 0},
      {"scenes", {{{"nodes", {0}}}}},
      {"nodes", {{{"mesh", 0}, {"name", mesh.name}}}},
      {"meshes", {{{"name", mesh.name}, {"primitives", {primitive}}}}},
      {"buffers", {{{"byteLength", bin.size()}}}},
      {"bufferViews", buffer_views},
      {"accessors", accessors},
  };
  std::string json_chunk = doc.dump();
  pad(json_chunk, ' ');

  std::string out;
  const auto total = static_cast<std::uint32_t>(12 + 8 + json_chunk.size() + 8 + bin.size());
  put(out, kGlbMagic);
  put(out, std::uint32_t{2});
  put(out, total);
  put(out, static_cast<std::uint32_t>(json_chunk.size()));
  put(out, kChunkJson);
  out += json_chunk;
  put(out, static_cast<std::uint32_t>(bin.size()));
  put(out, kChunkBin);
  out += bin;
  return out;
}

}  // namespace curate::geometry
