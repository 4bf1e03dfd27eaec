#include "curate/scene/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace curate::scene {
namespace {

template <class E, std::size_t N>
using Names = std::array<std::pair<E, std::string_view>, N>;

constexpr Names<Category, 5> kCategories{{{Category::Bottle, "Bottle"},
                                          {Category::Tripod, "Tripod"},
                                          {Category::Ge, "Ge"},
                                          {Category::Gui, "Gui"},
                                          {Category::Other, "Other"}}};
constexpr Names<Purpose, 6> kPurposes{{{Purpose::Eating, "Eating"},
                                       {Purpose::War, "War"},
                                       {Purpose::WineVessel, "WineVessel"},
                                       {Purpose::MusicalInstrument, "MusicalInstrument"},
                                       {Purpose::Sacrifice, "Sacrifice"},
                                       {Purpose::Other, "Other"}}};
constexpr Names<Dynasty, 4> kDynasties{{{Dynasty::ShangZhou, "ShangZhou"},
                                        {Dynasty::Han, "Han"},
                                        {Dynasty::WeiJin, "WeiJin"},
                                        {Dynasty::Other, "Other"}}};
constexpr Names<Theme, 3> kThemes{
    {{Theme::Category, "Category"}, {Theme::Purpose, "Purpose"}, {Theme::Dynasty, "Dynasty"}}};
constexpr Names<TeleportKind, 4> kTeleportKinds{{{TeleportKind::Plain, "Plain"},
                                                 {TeleportKind::NextLevel, "NextLevel"},
                                                 {TeleportKind::ReturnToRoaming, "ReturnToRoaming"},
                                                 {TeleportKind::EnterGame, "EnterGame"}}};
constexpr Names<ContainerKind, 4> kContainerKinds{{{ContainerKind::Shelf, "Shelf"},
                                                   {ContainerKind::RoundTable, "RoundTable"},
                                                   {ContainerKind::Box, "Box"},
                                                   {ContainerKind::Booth, "Booth"}}};

template <class E, std::size_t N>
std::string_view name_of(const Names<E, N>& table, E e) {
  for (const auto& [v, s] : table)
    if (v == e) return s;
  return "?";
}

template <class E, std::size_t N>
std::optional<E> parse(const Names<E, N>& table, std::string_view s) {
  for (const auto& [v, name] : table)
    if (name == s) return v;
  return std::nullopt;
}

template <class T>
const T* find_by_id(const std::vector<T>& v, std::string_view id) {
  auto it = std::find_if(v.begin(), v.end(), [&](const T& x) { return x.id == id; });
  return it == v.end() ? nullptr : &*it;
}

}  // namespace

std::string_view to_string(Category c) { return name_of(kCategories, c); }
std::string_view to_string(Purpose p) { return name_of(kPurposes, p); }
std::string_view to_string(Dynasty d) { return name_of(kDynasties, d); }
std::string_view to_string(Theme t) { return name_of(kThemes, t); }
std::string_view to_string(TeleportKind k) { return name_of(kTeleportKinds, k); }
std::string_view to_string(ContainerKind k) { return name_of(kContainerKinds, k); }
std::optional<Category> parse_category(std::string_view s) { return parse(kCategories, s); }
std::optional<Purpose> parse_purpose(std::string_view s) { return parse(kPurposes, s); }
std::optional<Dynasty> parse_dynasty(std::string_view s) { return parse(kDynasties, s); }
std::optional<Theme> parse_theme(std::string_view s) { return parse(kThemes, s); }
std::optional<TeleportKind> parse_teleport_kind(std::string_view s) {
  return parse(kTeleportKinds, s);
}
std::optional<ContainerKind> parse_container_kind(std::string_view s) {
  return parse(kContainerKinds, s);
}

std::string_view Exhibit::attribute(Theme theme) const {
  switch (theme) {
    case Theme::Category: return to_string(category);
    case Theme::Purpose: return to_string(purpose);
    case Theme::Dynasty: return to_string(dynasty);
  }
  return {};
}

Vec2 Rect::to_local(const Vec2& p) const {
  const double c = std::cos(yaw), s = std::sin(yaw);
  const Vec2 d = p - center;
  return {c * d.x() + s * d.y(), -s * d.x() + c * d.y()};
}

Vec2 Rect::to_world(const Vec2& local) const {
  const double c = std::cos(yaw), s = std::sin(yaw);
  return center + Vec2{c * local.x() - s * local.y(), s * local.x() + c * local.y()};
}

bool Rect::contains(const Vec2& p, double eps) const {
  const Vec2 l = to_local(p);
  return std::abs(l.x()) <= width / 2 + eps && std::abs(l.y()) <= depth / 2 + eps;
}

bool operator==(const Pose& a, const Pose& b) {
  return a.position == b.position && a.rotation.coeffs() == b.rotation.coeffs();
}

const Exhibit* MuseumScene::find_exhibit(std::string_view id) const {
  return find_by_id(exhibits, id);
}
const Asset* MuseumScene::find_asset(std::string_view id) const { return find_by_id(assets, id); }
const Room* MuseumScene::find_room(std::string_view id) const { return find_by_id(rooms, id); }
const TeleportPoint* MuseumScene::find_point(std::string_view id) const {
  return find_by_id(teleport.points, id);
}

const Stand* MuseumScene::find_stand_for(std::string_view exhibit_id) const {
  for (const auto& s : stands)
    if (s.exhibit_id == exhibit_id) return &s;
  return nullptr;
}

const LevelConfig* MuseumScene::find_level(int level) const {
  for (const auto& l : levels)
    if (l.level == level) return &l;
  return nullptr;
}

const Room* MuseumScene::roaming_room(int level) const {
  for (const auto& r : rooms)
    if (r.kind == RoomKind::Roaming && r.level == level) return &r;
  return nullptr;
}

const Room* MuseumScene::game_room(int level) const {
  for (const auto& r : rooms)
    if (r.kind == RoomKind::Game && r.level == level) return &r;
  return nullptr;
}

}  // namespace curate::scene
