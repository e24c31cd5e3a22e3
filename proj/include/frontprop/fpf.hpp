#pragma once
#include <optional>
#include <string>

#include "frontprop/grid.hpp"

namespace frontprop {

// FPF1 field dump: a text header `<name>.fpf` plus a sibling binary
// `<name>.bin` of little-endian 8-byte IEEE-754 doubles in row-major
// order (x fastest). Optional `sentinel` key documents a reserved value
// (used by minimal-time fields for "never reached").
struct FpfMeta {
  std::optional<double> sentinel;
};

void write_fpf(const std::string& header_path, const ScalarField& field,
               const FpfMeta& meta = {});
ScalarField read_fpf(const std::string& header_path, FpfMeta* meta = nullptr);

// Human-readable header + value statistics (the `dump-info` command).
std::string fpf_info(const std::string& header_path);

}  // namespace frontprop
