#include "ccs/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "ccs/errors.hpp"

namespace ccs {

namespace {

constexpr char kMagic[8] = {'C', 'C', 'S', 'S', 'N', 'A', 'P', '\0'};

void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 8);
}

void put_f64(std::ostream& os, double v) {
    put_u64(os, std::bit_cast<std::uint64_t>(v));
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

void put_field(std::ostream& os, const Field& f) {
    for (double x : f) put_f64(os, x);
}

Field get_field(std::istream& is, std::size_t n) {
    Field f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = get_f64(is);
    return f;
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const FieldState& state,
                      const Domain& grid) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open checkpoint for writing: " + path.string());
    os.write(kMagic, 8);
    put_u32(os, kCheckpointVersion);
    put_u32(os, static_cast<std::uint32_t>(grid.dim));
    put_u64(os, static_cast<std::uint64_t>(grid.nx()));
    put_u64(os, static_cast<std::uint64_t>(grid.ny()));
    put_f64(os, grid.lengths[0]);
    put_f64(os, grid.lengths[1]);
    put_f64(os, state.t);
    put_u64(os, state.step);
    put_field(os, state.u);
    put_field(os, state.v);
    put_field(os, state.w);
    if (!os) throw Error("checkpoint write failed: " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open checkpoint: " + path.string());
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kMagic, 8) != 0)
        throw Error("not a checkpoint file: " + path.string());
    const std::uint32_t version = get_u32(is);
    if (version != kCheckpointVersion)
        throw Error("unsupported checkpoint version " + std::to_string(version));

    Checkpoint cp;
    cp.domain.dim = static_cast<int>(get_u32(is));
    cp.domain.cells[0] = static_cast<int>(get_u64(is));
    cp.domain.cells[1] = static_cast<int>(get_u64(is));
    cp.domain.lengths[0] = get_f64(is);
    cp.domain.lengths[1] = get_f64(is);
    validate_domain(cp.domain);
    cp.state.t = get_f64(is);
    cp.state.step = get_u64(is);
    const std::size_t n = cp.domain.cell_count();
    cp.state.u = get_field(is, n);
    cp.state.v = get_field(is, n);
    cp.state.w = get_field(is, n);
    if (!is) throw Error("checkpoint truncated: " + path.string());
    return cp;
}

}  // namespace ccs
