#pragma once

#include <string>

#include "hitchin/loop_field.hpp"
#include "hitchin/phase_space.hpp"

namespace hitchin {

// Phase-point JSON: {"N":n, "u":[[re,im],...], "w":[...], "p":[[[re,im],...],...]}.
// Writers emit 17 significant digits (round-trip exact) with a fixed key
// order, so equal inputs produce byte-identical files.
std::string phase_point_to_json(const PhasePoint& x);
PhasePoint phase_point_from_json(const std::string& text);
void write_phase_point(const PhasePoint& x, const std::string& path);
PhasePoint read_phase_point(const std::string& path);

// Loop-field JSON: {"r":r, "K":K, "coeffs":[[n, [[[re,im],...],...]],...]}
// with n ascending from -K to K.
std::string loop_field_to_json(const LoopField& lf);
LoopField loop_field_from_json(const std::string& text);
void write_loop_field(const LoopField& lf, const std::string& path);
LoopField read_loop_field(const std::string& path);

}  // namespace hitchin
