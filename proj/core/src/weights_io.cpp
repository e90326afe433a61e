// Copyright 2026 The hf0 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// HF0W weight file:
//   "HF0W" | u32 version | u32 input_lags | u32 context | u32 tensor_count
//   per tensor: u16 name_len | name | u8 rank | u32 dims[rank] | f32 payload
// All integers and floats little-endian, payload row-major.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>

#include "hf0/classifier.hpp"

namespace hf0 {
namespace {

static_assert(std::endian::native == std::endian::little,
              "weight file I/O assumes a little-endian host");

using Kind = WeightFileError::Kind;

constexpr char kMagic[4] = {'H', 'F', '0', 'W'};

class Reader {
 public:
  explicit Reader(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }

  std::string string(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }

  void floats(float* out, std::size_t n) {
    if (n > (bytes_.size() - pos_) / sizeof(float)) eof();
    std::memcpy(out, bytes_.data() + pos_, n * sizeof(float));
    pos_ += n * sizeof(float);
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (n > bytes_.size() - pos_) eof();
  }
  [[noreturn]] static void eof() {
    throw WeightFileError(Kind::kUnexpectedEof, "unexpected end of file");
  }

  std::vector<std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct Header {
  std::uint32_t input_lags = 0;
  std::uint32_t context = 0;
};

std::vector<NamedTensor> parse(const std::filesystem::path& path, Header& header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WeightFileError(Kind::kIo, "cannot open weight file '" + path.string() + "'");
  Reader r(std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>()));

  char magic[4];
  for (char& c : magic) c = static_cast<char>(r.get<std::uint8_t>());
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw WeightFileError(Kind::kBadMagic, "bad magic: not an HF0W weight file");
  }
  const auto version = r.get<std::uint32_t>();
  if (version != kWeightFileVersion) {
    throw WeightFileError(Kind::kVersionMismatch,
                          "unsupported weight file version " + std::to_string(version) +
                              " (expected " + std::to_string(kWeightFileVersion) + ")");
  }
  header.input_lags = r.get<std::uint32_t>();
  header.context = r.get<std::uint32_t>();
  const auto count = r.get<std::uint32_t>();

  std::vector<NamedTensor> tensors;
  for (std::uint32_t i = 0; i < count; ++i) {
    NamedTensor t;
    t.name = r.string(r.get<std::uint16_t>());
    const auto rank = r.get<std::uint8_t>();
    std::size_t total = 1;
    for (std::uint8_t d = 0; d < rank; ++d) {
      t.shape.push_back(r.get<std::uint32_t>());
      total *= t.shape.back();
    }
    if (total > (std::size_t{1} << 31)) {
      throw WeightFileError(Kind::kShapeMismatch, t.name + ": tensor too large");
    }
    t.values.resize(total);
    r.floats(t.values.data(), total);
    tensors.push_back(std::move(t));
  }
  if (!r.done()) throw WeightFileError(Kind::kShapeMismatch, "trailing bytes after last tensor");
  return tensors;
}

std::string shape_string(const std::vector<std::size_t>& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

class TensorTable {
 public:
  explicit TensorTable(std::vector<NamedTensor> tensors) {
    static const char* kKnown[] = {"conv1.kernel", "conv1.bias", "bn1.gamma",    "bn1.beta",
                                   "bn1.mean",     "bn1.var",    "bn1.eps",      "conv2.kernel",
                                   "conv2.bias",   "bn2.gamma",  "bn2.beta",     "bn2.mean",
                                   "bn2.var",      "bn2.eps",    "dense.weight", "dense.bias"};
    for (auto& t : tensors) {
      if (std::find(std::begin(kKnown), std::end(kKnown), t.name) == std::end(kKnown)) {
        throw WeightFileError(Kind::kUnknownTensor, "unknown tensor '" + t.name + "'");
      }
      const std::string name = t.name;
      if (!map_.emplace(name, std::move(t)).second) {
        throw WeightFileError(Kind::kShapeMismatch, "duplicate tensor '" + name + "'");
      }
    }
    for (const char* name : kKnown) {
      if (!map_.count(name)) {
        throw WeightFileError(Kind::kMissingTensor, std::string("missing tensor '") + name + "'");
      }
    }
  }

  const NamedTensor& get(const std::string& name) const { return map_.at(name); }

  // Values of `name` after checking its declared shape.
  std::vector<double> take(const std::string& name, const std::vector<std::size_t>& shape) const {
    const NamedTensor& t = get(name);
    if (t.shape != shape) {
      throw WeightFileError(Kind::kShapeMismatch, name + ": shape " + shape_string(t.shape) +
                                                      ", expected " + shape_string(shape));
    }
    std::vector<double> out(t.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!std::isfinite(t.values[i])) {
        throw WeightFileError(Kind::kNonFinite, name + ": non-finite value at index " +
                                                    std::to_string(i));
      }
      out[i] = t.values[i];
    }
    return out;
  }

 private:
  std::map<std::string, NamedTensor> map_;
};

nn::BatchNormParams take_bn(const TensorTable& tt, const std::string& p, std::size_t ch) {
  nn::BatchNormParams bn;
  bn.gamma = tt.take(p + ".gamma", {ch});
  bn.beta = tt.take(p + ".beta", {ch});
  bn.mean = tt.take(p + ".mean", {ch});
  bn.var = tt.take(p + ".var", {ch});
  bn.eps = tt.take(p + ".eps", {1})[0];
  return bn;
}

}  // namespace

std::vector<NamedTensor> read_weight_tensors(const std::filesystem::path& path) {
  Header h;
  return parse(path, h);
}

ModelWeights load_weights(const std::filesystem::path& path) {
  Header h;
  TensorTable tt(parse(path, h));

  ModelWeights w;
  w.input_lags = h.input_lags;
  w.context = h.context;

  const auto& k1 = tt.get("conv1.kernel").shape;
  if (k1.size() != 4 || k1[0] != 3 || k1[1] != 3 || k1[2] != 1) {
    throw WeightFileError(Kind::kShapeMismatch,
                          "conv1.kernel: shape " + shape_string(k1) + ", expected [3, 3, 1, C]");
  }
  const std::size_t ch = k1[3];

  w.conv1.in_channels = 1;
  w.conv1.out_channels = ch;
  w.conv1.kernel = tt.take("conv1.kernel", {3, 3, 1, ch});
  w.conv1.bias = tt.take("conv1.bias", {ch});
  w.bn1 = take_bn(tt, "bn1", ch);
  const auto& k2 = tt.get("conv2.kernel").shape;
  if (k2.size() != 4) {
    throw WeightFileError(Kind::kShapeMismatch,
                          "conv2.kernel: shape " + shape_string(k2) + ", expected [3, 3, C, C2]");
  }
  const std::size_t ch2 = k2[3];
  w.conv2.in_channels = ch;
  w.conv2.out_channels = ch2;
  w.conv2.kernel = tt.take("conv2.kernel", {3, 3, ch, ch2});
  w.conv2.bias = tt.take("conv2.bias", {ch2});
  w.bn2 = take_bn(tt, "bn2", ch2);
  w.dense.in_features = w.flatten_dim();
  w.dense.out_features = kNumClasses;
  w.dense.weight = tt.take("dense.weight", {w.flatten_dim(), kNumClasses});
  w.dense.bias = tt.take("dense.bias", {kNumClasses});
  w.validate();
  return w;
}

namespace {

void put_tensor(std::ostream& out, const std::string& name, const std::vector<std::size_t>& shape,
                const std::vector<double>& values) {
  const auto len = static_cast<std::uint16_t>(name.size());
  out.write(reinterpret_cast<const char*>(&len), 2);
  out.write(name.data(), len);
  const auto rank = static_cast<std::uint8_t>(shape.size());
  out.write(reinterpret_cast<const char*>(&rank), 1);
  for (std::size_t d : shape) {
    const auto v = static_cast<std::uint32_t>(d);
    out.write(reinterpret_cast<const char*>(&v), 4);
  }
  for (double v : values) {
    const auto f = static_cast<float>(v);
    out.write(reinterpret_cast<const char*>(&f), 4);
  }
}

}  // namespace

void save_weights(const ModelWeights& w, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  const std::size_t c1 = w.conv1.out_channels;
  const std::size_t c2 = w.conv2.out_channels;

  out.write(kMagic, 4);
  const std::uint32_t header[4] = {kWeightFileVersion, static_cast<std::uint32_t>(w.input_lags),
                                   static_cast<std::uint32_t>(w.context), 16};
  out.write(reinterpret_cast<const char*>(header), sizeof header);

  put_tensor(out, "conv1.kernel", {3, 3, w.conv1.in_channels, c1}, w.conv1.kernel);
  put_tensor(out, "conv1.bias", {c1}, w.conv1.bias);
  put_tensor(out, "bn1.gamma", {c1}, w.bn1.gamma);
  put_tensor(out, "bn1.beta", {c1}, w.bn1.beta);
  put_tensor(out, "bn1.mean", {c1}, w.bn1.mean);
  put_tensor(out, "bn1.var", {c1}, w.bn1.var);
  put_tensor(out, "bn1.eps", {1}, {w.bn1.eps});
  put_tensor(out, "conv2.kernel", {3, 3, w.conv2.in_channels, c2}, w.conv2.kernel);
  put_tensor(out, "conv2.bias", {c2}, w.conv2.bias);
  put_tensor(out, "bn2.gamma", {c2}, w.bn2.gamma);
  put_tensor(out, "bn2.beta", {c2}, w.bn2.beta);
  put_tensor(out, "bn2.mean", {c2}, w.bn2.mean);
  put_tensor(out, "bn2.var", {c2}, w.bn2.var);
  put_tensor(out, "bn2.eps", {1}, {w.bn2.eps});
  put_tensor(out, "dense.weight", {w.dense.in_features, w.dense.out_features}, w.dense.weight);
  put_tensor(out, "dense.bias", {w.dense.out_features}, w.dense.bias);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace hf0
