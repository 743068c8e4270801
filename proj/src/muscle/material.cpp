#include "snapswim/muscle/material.hpp"

#include <cmath>

#include <fmt/format.h>

#include "snapswim/config/kv.hpp"
#include "snapswim/error.hpp"

namespace snapswim::muscle {

namespace {

// Diffusivity default: a 1.2 mm VeroWhitePlus muscle activates after 30 s in
// 60 C water under the activation-time law in muscle.cpp,
// 30 / (1.2^2 * ln(40 / 5)).
constexpr std::string_view kBuiltin = R"(# Printing materials: glass transition and thermal activation scale.
[materials.VeroWhitePlus]
tg_c = 60
diffusivity_s_per_mm2 = 10.0187156

[materials.FLX9895]
tg_c = 35
diffusivity_s_per_mm2 = 10.0187156

[materials.Agilus30]
tg_c = -5
diffusivity_s_per_mm2 = 10.0187156

[materials.RGD525]
tg_c = 80
diffusivity_s_per_mm2 = 10.0187156
)";

}  // namespace

std::string_view builtin_material_text() { return kBuiltin; }

void Material::validate() const {
  if (name.empty()) throw DomainError("material needs a name");
  if (!std::isfinite(glass_transition_c)) {
    throw DomainError(fmt::format("material {}: glass transition must be finite", name));
  }
  if (!(diffusivity_s_per_mm2 > 0.0) || !std::isfinite(diffusivity_s_per_mm2)) {
    throw DomainError(fmt::format("material {}: diffusivity must be positive", name));
  }
}

MaterialDb MaterialDb::builtin() {
  static const MaterialDb db =
      from_document(config::Document::parse(kBuiltin, "<builtin materials>"));
  return db;
}

MaterialDb MaterialDb::from_document(const config::Document& doc) {
  MaterialDb db;
  for (const config::Section* sec : doc.with_prefix("materials")) {
    sec->require_known({"tg_c", "diffusivity_s_per_mm2"});
    Material m;
    m.name = sec->name().substr(std::string_view("materials.").size());
    m.glass_transition_c = sec->number("tg_c");
    m.diffusivity_s_per_mm2 = sec->number("diffusivity_s_per_mm2");
    try {
      m.validate();
    } catch (const DomainError& e) {
      throw ConfigError(doc.source(), sec->line(), sec->name(), e.what());
    }
    db.add(std::move(m));
  }
  return db;
}

MaterialDb MaterialDb::load(const std::string& path) {
  return from_document(config::Document::load(path));
}

const Material& MaterialDb::get(std::string_view name) const {
  for (const auto& m : materials_) {
    if (m.name == name) return m;
  }
  throw ConfigError("<materials>", 0, std::string(name), "unknown material");
}

bool MaterialDb::contains(std::string_view name) const {
  for (const auto& m : materials_) {
    if (m.name == name) return true;
  }
  return false;
}

void MaterialDb::add(Material m) {
  for (auto& existing : materials_) {
    if (existing.name == m.name) {
      existing = std::move(m);
      return;
    }
  }
  materials_.push_back(std::move(m));
}

std::string MaterialDb::to_text() const {
  config::Document doc;
  for (const auto& m : materials_) {
    auto& sec = doc.add_section("materials." + m.name);
    sec.set("tg_c", config::format_number(m.glass_transition_c));
    sec.set("diffusivity_s_per_mm2", config::format_number(m.diffusivity_s_per_mm2));
  }
  return doc.to_text();
}

}  // namespace snapswim::muscle
