#ifndef QTRAJ_TOOLS_FIGURES_HPP
#define QTRAJ_TOOLS_FIGURES_HPP

// Built-in figure presets: six reference plots of the trajectory family
// (free motion, linear potential allowed/forbidden, harmonic oscillator
// ground/excited allowed, harmonic forbidden).

#include <string>

namespace qtraj::cli {

// Renders preset `id` (1..6) to `<out_dir>/figure<id>.svg` and returns
// the file path.  Throws ValidationError for an unknown id.
std::string render_figure(int id, const std::string& out_dir);

} // namespace qtraj::cli

#endif
