#pragma once

#include <string>

#include "slidekit/grid.hpp"
#include "slidekit/grid_function.hpp"

namespace slidekit {

enum class Encoding { csv, f64le };

/// Writes `<path>` (JSON header) and a payload sidecar next to it named
/// `<stem>.csv` or `<stem>.f64`. See FORMATS.md.
void write_grid_function(const std::string& path, const GridFunction& u, Encoding enc = Encoding::f64le);
GridFunction read_grid_function(const std::string& path);

/// Mask file: {"balls": [{"center": [...], "radius": r}, ...]} and/or
/// {"indices": [...]}; the union of everything listed.
Mask read_mask(const std::string& path, const Grid& g);
void write_mask(const std::string& path, const Mask& m);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace slidekit
