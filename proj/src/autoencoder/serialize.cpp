#include "rotortrack/autoencoder/serialize.hpp"

#include <bit>
#include <cstring>

#include <zlib.h>

#include "rotortrack/error.hpp"
#include "rotortrack/fileio.hpp"

namespace rotortrack {

using neural::real;

namespace {

constexpr std::string_view kMagic = "RTAE";

class Writer {
 public:
  void bytes(std::string_view s) { out_.append(s); }
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) { uint_le(v, 4); }
  void u64(std::uint64_t v) { uint_le(v, 8); }

  template <class T>
  void array(const std::vector<T>& values) {
    u64(values.size());
    for (T v : values) value(static_cast<real>(v));
  }
  void value(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void value(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  std::string take() { return std::move(out_); }
  const std::string& buffer() const { return out_; }

 private:
  void uint_le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::string_view bytes(std::size_t n) {
    need(n);
    auto s = data_.substr(at_, n);
    at_ += n;
    return s;
  }
  std::uint8_t u8() { return static_cast<std::uint8_t>(bytes(1)[0]); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(uint_le(4)); }
  std::uint64_t u64() { return uint_le(8); }

  std::vector<real> array(std::size_t width) {
    std::uint64_t n = u64();
    if (n > (data_.size() - at_) / width) throw ChecksumError("model file: array length exceeds file size");
    std::vector<real> out(n);
    for (auto& v : out) {
      if (width == 8) {
        v = static_cast<real>(std::bit_cast<double>(u64()));
      } else {
        v = static_cast<real>(std::bit_cast<float>(u32()));
      }
    }
    return out;
  }
  bool done() const { return at_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - at_ < n) throw ChecksumError("model file: truncated");
  }
  std::uint64_t uint_le(int n) {
    auto s = bytes(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{static_cast<unsigned char>(s[i])} << (8 * i);
    return v;
  }
  std::string_view data_;
  std::size_t at_ = 0;
};

std::uint32_t crc32_of(std::string_view data) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in pieces.
  constexpr std::size_t kPiece = 1u << 30;
  for (std::size_t at = 0; at < data.size(); at += kPiece) {
    auto n = std::min(kPiece, data.size() - at);
    crc = ::crc32(crc, reinterpret_cast<const Bytef*>(data.data() + at), static_cast<uInt>(n));
  }
  return static_cast<std::uint32_t>(crc);
}

const std::vector<real>& weights_of(const AnyLayer& l) {
  return std::visit([](const auto& x) -> const std::vector<real>& { return x.weights; }, l);
}
const std::vector<real>& bias_of(const AnyLayer& l) {
  return std::visit([](const auto& x) -> const std::vector<real>& { return x.bias; }, l);
}
std::vector<real>& weights_of(AnyLayer& l) {
  return std::visit([](auto& x) -> std::vector<real>& { return x.weights; }, l);
}
std::vector<real>& bias_of(AnyLayer& l) {
  return std::visit([](auto& x) -> std::vector<real>& { return x.bias; }, l);
}

}  // namespace

std::string serialize_model(const Autoencoder& model) {
  Writer w;
  w.bytes(kMagic);
  w.u32(kModelFormatVersion);
  w.u8(sizeof(real));
  std::string spec = spec_to_json(model.spec());
  w.u64(spec.size());
  w.bytes(spec);
  w.array(std::vector<double>(model.norm().mean.begin(), model.norm().mean.end()));
  w.array(std::vector<double>(model.norm().stddev.begin(), model.norm().stddev.end()));
  w.u32(static_cast<std::uint32_t>(model.stages().size()));
  for (const auto& stage : model.stages()) {
    w.array(weights_of(stage.layer));
    w.array(bias_of(stage.layer));
  }
  w.u32(crc32_of(w.buffer()));
  return w.take();
}

Autoencoder deserialize_model(std::string_view bytes) {
  if (bytes.size() < kMagic.size() || bytes.substr(0, kMagic.size()) != kMagic) {
    throw ParseError("not a model file (missing RTAE header)");
  }
  Reader header(bytes.substr(kMagic.size()));
  std::uint32_t version = header.u32();
  if (version != kModelFormatVersion) {
    throw VersionError("model file version " + std::to_string(version) + ", this build reads version " +
                       std::to_string(kModelFormatVersion));
  }
  if (bytes.size() < kMagic.size() + 8) throw ChecksumError("model file: truncated");
  auto body = bytes.substr(0, bytes.size() - 4);
  Reader tail(bytes.substr(bytes.size() - 4));
  if (tail.u32() != crc32_of(body)) throw ChecksumError("model file: checksum mismatch");

  Reader r(body.substr(kMagic.size() + 4));
  std::size_t width = r.u8();
  if (width != 4 && width != 8) throw ParseError("model file: unsupported value width");
  std::uint64_t spec_len = r.u64();
  AutoencoderSpec spec = spec_from_json(r.bytes(spec_len));
  NormStats norm;
  auto mean = r.array(width);
  auto stddev = r.array(width);
  if (mean.size() != kFeatureCount || stddev.size() != kFeatureCount) {
    throw ShapeMismatch("model file: normalization has the wrong feature count");
  }
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    norm.mean[f] = static_cast<double>(mean[f]);
    norm.stddev[f] = static_cast<double>(stddev[f]);
  }

  Autoencoder shape = Autoencoder::build(spec);
  std::uint32_t count = r.u32();
  if (count != shape.stages().size()) throw ShapeMismatch("model file: stage count does not match spec");
  std::vector<ModelStage> stages(shape.stages().begin(), shape.stages().end());
  for (auto& stage : stages) {
    weights_of(stage.layer) = r.array(width);
    bias_of(stage.layer) = r.array(width);
  }
  if (!r.done()) throw ParseError("model file: trailing bytes after the last stage");
  return Autoencoder::from_parts(spec, std::move(stages), norm);
}

void save_model(const Autoencoder& model, const std::filesystem::path& path) {
  write_atomic(path, serialize_model(model));
}

Autoencoder load_model(const std::filesystem::path& path) {
  auto data = read_bytes(path);
  return deserialize_model(std::string_view(data.data(), data.size()));
}

}  // namespace rotortrack
