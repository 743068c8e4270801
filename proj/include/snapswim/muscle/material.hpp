#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace snapswim::config {
class Document;
}

namespace snapswim::muscle {

struct Material {
  std::string name;
  double glass_transition_c = 0.0;     // T_g
  double diffusivity_s_per_mm2 = 0.0;  // activation time scale per thickness^2

  void validate() const;
  friend bool operator==(const Material&, const Material&) = default;
};

// Named materials, in file order. The shipped database covers the printing
// materials of the reference robots; scenario files may extend it.
class MaterialDb {
 public:
  static MaterialDb builtin();
  static MaterialDb from_document(const config::Document& doc);
  static MaterialDb load(const std::string& path);

  // Throws ConfigError for unknown names.
  const Material& get(std::string_view name) const;
  bool contains(std::string_view name) const;
  void add(Material m);  // replaces an existing entry of the same name

  const std::vector<Material>& all() const { return materials_; }
  std::string to_text() const;

 private:
  std::vector<Material> materials_;
};

// Text of the shipped database (same content as data/materials.cfg).
std::string_view builtin_material_text();

}  // namespace snapswim::muscle
