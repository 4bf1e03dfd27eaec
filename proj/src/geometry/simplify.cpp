#include "curate/geometry/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "curate/geometry/quadric.hpp"

namespace curate::geometry {
namespace {

constexpr double kBoundaryPenalty = 1000.0;

struct GeometricTraits {
  using QuadricType = Quadric;
  using Point = Vec3;

  static Point point_of(const Mesh& m, std::uint32_t v) { return m.positions[v]; }
  static Vec3 position(const Point& p) { return p; }
  static void store(Mesh& m, std::uint32_t v, const Point& p) { m.positions[v] = p; }
  static QuadricType boundary(const Quadric& q) { return q; }
};

struct ColorTraits {
  using QuadricType = AttributeQuadric;
  using Point = Vec6;

  static Point point_of(const Mesh& m, std::uint32_t v) {
    Vec6 p;
    p << m.positions[v], m.colors[v];
    return p;
  }
  static Vec3 position(const Point& p) { return p.head<3>(); }
  static void store(Mesh& m, std::uint32_t v, const Point& p) {
    m.positions[v] = p.head<3>();
    m.colors[v] = p.tail<3>().cwiseMax(0.0).cwiseMin(1.0);
  }
  static QuadricType boundary(const Quadric& q) { return AttributeQuadric::from_geometric(q); }
};

template <typename Traits>
class Decimator {
  using Q = typename Traits::QuadricType;
  using Point = typename Traits::Point;

  struct Candidate {
    double cost;
    std::uint32_t u, v;
    std::uint32_t stamp_u, stamp_v;
    Point target;
  };
  struct Cheaper {
    bool operator()(const Candidate& a, const Candidate& b) const {
      if (a.cost != b.cost) return a.cost > b.cost;
      if (a.u != b.u) return a.u > b.u;
      return a.v > b.v;
    }
  };

 public:
  Decimator(const Mesh& input, const SimplifyOptions& options) : mesh_(input), options_(options) {
    const auto n = mesh_.vertex_count();
    quadrics_.assign(n, Q{});
    area_.assign(n, 0.0);
    stamp_.assign(n, 0);
    vertex_alive_.assign(n, true);
    face_alive_.assign(mesh_.face_count(), true);
    vertex_faces_.resize(n);
    for (std::uint32_t f = 0; f < mesh_.face_count(); ++f)
      for (auto v : mesh_.triangles[f]) vertex_faces_[v].push_back(f);
    live_faces_ = mesh_.face_count();
    report_.input_faces = mesh_.face_count();
    init_quadrics();
  }

  SimplifyResult run() {
    while (live_faces_ > options_.target_face_count) {
      const auto before = report_.collapses;
      fill_heap();
      drain_heap();
      if (report_.collapses == before) break;
    }
    return {compact(), report_};
  }

 private:
  void init_quadrics() {
    const auto set = compute_quadrics(mesh_, QuadricWeighting::Area);
    report_.degenerate_faces = set.degenerate_faces_skipped;
    for (std::size_t v = 0; v < mesh_.vertex_count(); ++v) {
      if constexpr (std::is_same_v<Q, Quadric>) quadrics_[v] = set.geometric[v];
      else quadrics_[v] = set.attribute[v];
    }
    for (const auto& tri : mesh_.triangles) {
      const double a = face_area(mesh_, tri);
      for (auto v : tri) area_[v] += a;
    }
    if (!options_.preserve_boundary) return;

    // Constraint planes through each open edge, perpendicular to its face.
    for (std::uint32_t f = 0; f < mesh_.face_count(); ++f) {
      const auto& tri = mesh_.triangles[f];
      if (is_degenerate_face(mesh_, tri)) continue;
      const Vec3 n = face_normal_unnormalized(mesh_, tri).normalized();
      for (int k = 0; k < 3; ++k) {
        const auto a = tri[k], b = tri[(k + 1) % 3];
        if (edge_face_count(a, b) != 1) continue;
        const Vec3 e = mesh_.positions[b] - mesh_.positions[a];
        const Vec3 m = e.cross(n);
        if (m.norm() == 0.0) continue;
        const Vec3 mn = m.normalized();
        const auto q = Traits::boundary(
            Quadric::from_plane(mn, -mn.dot(mesh_.positions[a]), kBoundaryPenalty * e.squaredNorm()));
        quadrics_[a] += q;
        quadrics_[b] += q;
      }
    }
  }

  std::size_t edge_face_count(std::uint32_t a, std::uint32_t b) const {
    std::size_t count = 0;
    for (auto f : vertex_faces_[a]) {
      if (!face_alive_[f]) continue;
      const auto& t = mesh_.triangles[f];
      if (t[0] == b || t[1] == b || t[2] == b) ++count;
    }
    return count;
  }

  std::set<std::uint32_t> neighbors(std::uint32_t v) const {
    std::set<std::uint32_t> out;
    for (auto f : vertex_faces_[v]) {
      if (!face_alive_[f]) continue;
      for (auto w : mesh_.triangles[f])
        if (w != v) out.insert(w);
    }
    return out;
  }

  bool is_boundary_vertex(std::uint32_t v) const {
    for (auto w : neighbors(v))
      if (edge_face_count(v, w) == 1) return true;
    return false;
  }

  static double eval(const Q& q, const Point& p) { return q.evaluate(p); }

  Candidate make_candidate(std::uint32_t u, std::uint32_t v) const {
    if (u > v) std::swap(u, v);
    const Q q = quadrics_[u] + quadrics_[v];
    Candidate c{0.0, u, v, stamp_[u], stamp_[v], Point{}};
    if (auto opt = q.minimizer()) {
      c.target = *opt;
      c.cost = eval(q, c.target);
      return c;
    }
    const Point pu = Traits::point_of(mesh_, u);
    const Point pv = Traits::point_of(mesh_, v);
    const Point options[3] = {Point((pu + pv) * 0.5), pu, pv};
    c.target = options[0];
    c.cost = eval(q, options[0]);
    for (int i = 1; i < 3; ++i) {
      const double e = eval(q, options[i]);
      if (e < c.cost) {
        c.cost = e;
        c.target = options[i];
      }
    }
    return c;
  }

  void fill_heap() {
    heap_ = {};
    for (std::uint32_t f = 0; f < mesh_.face_count(); ++f) {
      if (!face_alive_[f]) continue;
      const auto& t = mesh_.triangles[f];
      for (int k = 0; k < 3; ++k) {
        const auto a = t[k], b = t[(k + 1) % 3];
        // Each edge once: from the face where it runs low-to-high, or any face if
        // it is open in that direction only.
        if (a < b || edge_face_count(a, b) == 1) heap_.push(make_candidate(a, b));
      }
    }
  }

  enum class Verdict { Ok, Stale, Topology, Flip };

  Verdict check(const Candidate& c) const {
    const auto u = c.u, v = c.v;
    if (!vertex_alive_[u] || !vertex_alive_[v]) return Verdict::Stale;
    if (stamp_[u] != c.stamp_u || stamp_[v] != c.stamp_v) return Verdict::Stale;

    std::vector<std::uint32_t> shared;
    std::set<std::uint32_t> opposite;
    for (auto f : vertex_faces_[u]) {
      if (!face_alive_[f]) continue;
      const auto& t = mesh_.triangles[f];
      if (t[0] == v || t[1] == v || t[2] == v) {
        shared.push_back(f);
        for (auto w : t)
          if (w != u && w != v) opposite.insert(w);
      }
    }
    if (shared.empty()) return Verdict::Stale;
    if (shared.size() > 2) return Verdict::Topology;

    const auto nu = neighbors(u);
    const auto nv = neighbors(v);
    std::vector<std::uint32_t> common;
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
    if (common.size() != opposite.size()) return Verdict::Topology;
    if (shared.size() == 2 && is_boundary_vertex(u) && is_boundary_vertex(v)) return Verdict::Topology;

    // The collapse must not produce two faces over the same vertex triple.
    std::set<std::array<std::uint32_t, 3>> triples;
    const Vec3 target = Traits::position(c.target);
    for (auto w : {u, v}) {
      for (auto f : vertex_faces_[w]) {
        if (!face_alive_[f]) continue;
        if (std::find(shared.begin(), shared.end(), f) != shared.end()) continue;
        auto t = mesh_.triangles[f];
        const Vec3 old_n = face_normal_unnormalized(mesh_, t);
        std::array<Vec3, 3> p;
        for (int k = 0; k < 3; ++k) {
          p[k] = (t[k] == u || t[k] == v) ? target : mesh_.positions[t[k]];
          if (t[k] == v) t[k] = u;
        }
        std::sort(t.begin(), t.end());
        if (!triples.insert(t).second) return Verdict::Topology;

        const Vec3 new_n = (p[1] - p[0]).cross(p[2] - p[0]);
        const double longest = std::max({(p[1] - p[0]).squaredNorm(), (p[2] - p[1]).squaredNorm(),
                                         (p[0] - p[2]).squaredNorm()});
        if (new_n.norm() <= 1e-12 * longest) return Verdict::Flip;
        if (old_n.norm() > 0.0 && old_n.dot(new_n) <= 0.0) return Verdict::Flip;
      }
    }
    return Verdict::Ok;
  }

  void collapse(const Candidate& c) {
    const auto u = c.u, v = c.v;
    const Vec3 old_u = mesh_.positions[u];
    const Vec3 old_v = mesh_.positions[v];

    for (auto f : vertex_faces_[u]) {
      if (!face_alive_[f]) continue;
      const auto& t = mesh_.triangles[f];
      if (t[0] == v || t[1] == v || t[2] == v) {
        face_alive_[f] = false;
        --live_faces_;
      }
    }
    for (auto f : vertex_faces_[v]) {
      if (!face_alive_[f]) continue;
      for (auto& w : mesh_.triangles[f])
        if (w == v) w = u;
      vertex_faces_[u].push_back(f);
    }
    vertex_faces_[v].clear();
    std::erase_if(vertex_faces_[u], [&](std::uint32_t f) { return !face_alive_[f]; });
    std::sort(vertex_faces_[u].begin(), vertex_faces_[u].end());
    vertex_faces_[u].erase(std::unique(vertex_faces_[u].begin(), vertex_faces_[u].end()), vertex_faces_[u].end());

    Traits::store(mesh_, u, c.target);
    if (mesh_.has_uvs()) {
      const Vec3 p = Traits::position(c.target);
      if ((p - old_v).squaredNorm() < (p - old_u).squaredNorm()) mesh_.uvs[u] = mesh_.uvs[v];
    }
    quadrics_[u] += quadrics_[v];
    area_[u] += area_[v];
    vertex_alive_[v] = false;
    ++stamp_[u];
    ++stamp_[v];
    ++report_.collapses;
    if (options_.on_collapse) options_.on_collapse(live_faces_);

    for (auto w : neighbors(u)) heap_.push(make_candidate(u, w));
  }

  void drain_heap() {
    while (!heap_.empty() && live_faces_ > options_.target_face_count) {
      const Candidate c = heap_.top();
      heap_.pop();
      switch (check(c)) {
        case Verdict::Stale: continue;
        case Verdict::Topology: ++report_.skipped_edges; continue;
        case Verdict::Flip: ++report_.rejected_flips; continue;
        case Verdict::Ok: break;
      }
      if (options_.max_error) {
        const double w = area_[c.u] + area_[c.v];
        const double normalized = w > 0.0 ? c.cost / w : c.cost;
        if (normalized > *options_.max_error) {
          ++report_.rejected_max_error;
          continue;
        }
      }
      collapse(c);
    }
  }

  Mesh compact() const {
    Mesh out;
    out.name = mesh_.name;
    std::vector<std::int64_t> remap(mesh_.vertex_count(), -1);
    for (std::uint32_t f = 0; f < mesh_.face_count(); ++f) {
      if (!face_alive_[f]) continue;
      Triangle t = mesh_.triangles[f];
      for (auto& w : t) {
        if (remap[w] < 0) {
          remap[w] = static_cast<std::int64_t>(out.positions.size());
          out.positions.push_back(mesh_.positions[w]);
          if (mesh_.has_colors()) out.colors.push_back(mesh_.colors[w]);
          if (mesh_.has_uvs()) out.uvs.push_back(mesh_.uvs[w]);
        }
        w = static_cast<std::uint32_t>(remap[w]);
      }
      out.triangles.push_back(t);
    }
    return out;
  }

  Mesh mesh_;
  const SimplifyOptions& options_;
  std::vector<Q> quadrics_;
  std::vector<double> area_;
  std::vector<std::uint32_t> stamp_;
  std::vector<bool> vertex_alive_;
  std::vector<bool> face_alive_;
  std::vector<std::vector<std::uint32_t>> vertex_faces_;
  std::size_t live_faces_ = 0;
  std::priority_queue<Candidate, std::vector<Candidate>, Cheaper> heap_;
  SimplifyReport report_;
};

}  // namespace

SimplifyResult simplify(const Mesh& mesh, const SimplifyOptions& options) {
  if (options.target_face_count < 2)
    throw std::invalid_argument("target face count must be at least 2");
  validate(mesh);
  if (options.target_face_count >= mesh.face_count()) {
    SimplifyReport report;
    report.input_faces = report.output_faces = mesh.face_count();
    return {mesh, report};
  }
  SimplifyResult result = mesh.has_colors() ? Decimator<ColorTraits>(mesh, options).run()
                                            : Decimator<GeometricTraits>(mesh, options).run();
  result.report.output_faces = result.mesh.face_count();
  return result;
}

}  // namespace curate::geometry
