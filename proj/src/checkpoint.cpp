#include "kin/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "kin/errors.hpp"

namespace kin {

namespace {

constexpr char kMagic[8] = {'K', 'I', 'N', 'C', 'K', 'P', 'T', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T take(std::istream& in, const char* what) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw ConfigError(std::string("checkpoint: truncated while reading ") + what);
  return v;
}

}  // namespace

void write_field(std::ostream& out, const Field& f) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid.dim));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(f.grid.n));
  for (Real v : f.values) put<double>(out, static_cast<double>(v));
}

Field read_field(std::istream& in) {
  const auto dim = take<std::uint32_t>(in, "field dim");
  const auto n = take<std::uint64_t>(in, "field n");
  Grid g = Grid::make(static_cast<int>(dim), static_cast<int>(n));
  Field f = Field::zeros(g);
  for (Real& v : f.values) v = static_cast<Real>(take<double>(in, "field values"));
  return f;
}

void write_checkpoint(const std::string& path, const KineticState& state,
                      const std::string& model_descriptor) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("checkpoint: cannot open '" + path + "' for writing");
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(state.dim()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(state.grid.n));
  put<double>(out, static_cast<double>(state.c));
  put<double>(out, static_cast<double>(state.t));
  put<std::int64_t>(out, static_cast<std::int64_t>(state.step));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(model_descriptor.size()));
  out.write(model_descriptor.data(), static_cast<std::streamsize>(model_descriptor.size()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(state.n_species()));
  for (const Field& f : state.species) write_field(out, f);
  if (!out) throw ConfigError("checkpoint: write failed for '" + path + "'");
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("checkpoint: cannot open '" + path + "'");
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw ConfigError("checkpoint: bad magic in '" + path + "'");
  const auto version = take<std::uint32_t>(in, "version");
  if (version != kVersion)
    throw ConfigError("checkpoint: unsupported version " + std::to_string(version));

  Checkpoint ck;
  ck.dim = static_cast<int>(take<std::uint32_t>(in, "dim"));
  ck.n = static_cast<int>(take<std::uint64_t>(in, "n"));
  ck.c = static_cast<Real>(take<double>(in, "c"));
  ck.t = static_cast<Real>(take<double>(in, "t"));
  ck.step = static_cast<long>(take<std::int64_t>(in, "step"));
  const auto len = take<std::uint32_t>(in, "model length");
  ck.model.resize(len);
  if (len) {
    in.read(ck.model.data(), len);
    if (!in) throw ConfigError("checkpoint: truncated model descriptor");
  }
  const auto count = take<std::uint32_t>(in, "species count");
  if (count != 2 && count != 6) throw ConfigError("checkpoint: bad species count");
  for (std::uint32_t s = 0; s < count; ++s) {
    Field f = read_field(in);
    if (f.grid.dim != ck.dim || f.grid.n != ck.n)
      throw ConfigError("checkpoint: species grid mismatch");
    ck.species.push_back(std::move(f));
  }
  return ck;
}

}  // namespace kin
