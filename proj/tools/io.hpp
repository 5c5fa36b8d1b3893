#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "cylradon/field.hpp"

namespace cylradon::cli {

/// Bad or unreadable input files and configs; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Writes through a sibling temp file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// "theta,rho,re,im" rows, theta-major.
std::string sphere_csv(const SphereSamples& g);
/// "s,t,re,im" rows, s-major.
std::string cylinder_csv(const CylinderSamples& f);

/// Reads a full product grid in the layout written above. Throws ConfigError on a wrong
/// header, malformed rows or a grid with holes.
SphereSamples read_sphere_csv(const std::filesystem::path& path);
CylinderSamples read_cylinder_csv(const std::filesystem::path& path);

}  // namespace cylradon::cli
