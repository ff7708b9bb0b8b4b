#ifndef CCS_CHECKPOINT_HPP
#define CCS_CHECKPOINT_HPP

#include <filesystem>

#include "ccs/domain.hpp"
#include "ccs/field.hpp"

namespace ccs {

// Versioned binary layout, little-endian:
//   magic "CCSSNAP\0", u32 version, u32 dim, u64 nx, u64 ny,
//   f64 lx, f64 ly, f64 t, u64 step, then u, v, w as raw f64 arrays
//   (row-major). The same layout is used for field snapshots.
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
    Domain domain;
    FieldState state;
};

void write_checkpoint(const std::filesystem::path& path, const FieldState& state,
                      const Domain& grid);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace ccs

#endif
