// Copyright 2026 The sagerl Authors.
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

#include "sagerl/model/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

namespace sagerl::model {
namespace {

constexpr std::array<char, 8> kMagic{'S', 'A', 'G', 'E', 'R', 'L', 'C', 'K'};
constexpr std::array<char, 4> kRegressorTag{'R', 'E', 'G', 'R'};
constexpr std::array<char, 4> kEndTag{'E', 'N', 'D', '!'};

class Writer {
 public:
  explicit Writer(const std::filesystem::path& file) : out_(file, std::ios::binary) {
    if (!out_) throw CheckpointError(file.string() + ": cannot open for writing");
  }
  template <std::size_t N>
  void tag(const std::array<char, N>& t) { out_.write(t.data(), N); }
  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void u32(std::uint32_t v) { le(v); }
  void u64(std::uint64_t v) { le(v); }
  void f32(float v) { le(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { le(std::bit_cast<std::uint64_t>(v)); }
  void finish() {
    out_.flush();
    if (!out_) throw CheckpointError("checkpoint: write failed");
  }

 private:
  template <typename U>
  void le(U v) {
    char buf[sizeof(U)];
    for (std::size_t i = 0; i < sizeof(U); ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out_.write(buf, sizeof(U));
  }
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& file) : in_(file, std::ios::binary), name_(file.string()) {
    if (!in_) throw CheckpointError(name_ + ": cannot open checkpoint");
  }
  template <std::size_t N>
  bool tag(const std::array<char, N>& t) {
    std::array<char, N> got{};
    read(got.data(), N);
    return got == t;
  }
  template <std::size_t N>
  std::array<char, N> raw() {
    std::array<char, N> got{};
    read(got.data(), N);
    return got;
  }
  std::uint8_t u8() { char c; read(&c, 1); return static_cast<std::uint8_t>(c); }
  std::uint32_t u32() { return le<std::uint32_t>(); }
  std::uint64_t u64() { return le<std::uint64_t>(); }
  float f32() { return std::bit_cast<float>(le<std::uint32_t>()); }
  double f64() { return std::bit_cast<double>(le<std::uint64_t>()); }
  [[noreturn]] void fail(const std::string& why) const { throw CheckpointError(name_ + ": " + why); }

 private:
  void read(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) fail("truncated checkpoint");
  }
  template <typename U>
  U le() {
    unsigned char buf[sizeof(U)];
    read(reinterpret_cast<char*>(buf), sizeof(U));
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(buf[i]) << (8 * i);
    return v;
  }
  std::ifstream in_;
  std::string name_;
};

}  // namespace

template <typename T>
void save_checkpoint(const std::filesystem::path& file, const Checkpoint<T>& ckpt) {
  const auto& cfg = ckpt.config;
  Writer w(file);
  w.tag(kMagic);
  w.u32(kCheckpointVersion);
  w.u64(cfg.layers);
  w.u64(cfg.hidden_dim);
  w.u8(cfg.aggregator == Aggregator::kMeanConcat ? 0 : 1);
  for (auto n : cfg.fanouts) w.u64(n);
  w.f64(cfg.learning_rate);
  w.u64(cfg.batch_size);
  w.u64(cfg.epochs);
  w.u8(cfg.aux_heads ? 1 : 0);
  w.u64(ckpt.feature_dim);
  w.u64(ckpt.num_labels);
  w.u8(ckpt.label_mode == nd::LabelMode::kSingle ? 0 : 1);
  ckpt.params.for_each_param([&w](const Param<T>& p) {
    w.u64(p.rows());
    w.u64(p.cols());
    for (T v : p.value.flat()) w.f32(static_cast<float>(v));
  });
  if (ckpt.regressor) {
    const auto& reg = *ckpt.regressor;
    w.tag(kRegressorTag);
    w.u64(reg.feature_dim());
    w.u8(reg.fitted() ? 1 : 0);
    for (double v : reg.weight().value.flat()) w.f64(v);
    w.f64(reg.bias().value(0, 0));
  }
  w.tag(kEndTag);
  w.finish();
}

template <typename T>
Checkpoint<T> load_checkpoint(const std::filesystem::path& file) {
  Reader r(file);
  if (!r.tag(kMagic)) r.fail("not a sagerl checkpoint");
  if (const auto v = r.u32(); v != kCheckpointVersion) {
    r.fail("unsupported checkpoint version " + std::to_string(v));
  }
  Checkpoint<T> ckpt;
  auto& cfg = ckpt.config;
  cfg.layers = r.u64();
  if (cfg.layers == 0 || cfg.layers > 64) r.fail("implausible layer count");
  cfg.hidden_dim = r.u64();
  cfg.aggregator = r.u8() == 0 ? Aggregator::kMeanConcat : Aggregator::kMeanAdd;
  cfg.fanouts.resize(cfg.layers);
  for (auto& n : cfg.fanouts) n = r.u64();
  cfg.learning_rate = r.f64();
  cfg.batch_size = r.u64();
  cfg.epochs = r.u64();
  cfg.aux_heads = r.u8() != 0;
  ckpt.feature_dim = r.u64();
  ckpt.num_labels = r.u64();
  ckpt.label_mode = r.u8() == 0 ? nd::LabelMode::kSingle : nd::LabelMode::kMulti;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }

  // Shapes come from the header; the stored shapes must agree.
  ckpt.params = SageParams<T>::init(cfg, ckpt.feature_dim, ckpt.num_labels, 0);
  ckpt.params.for_each_param([&r](Param<T>& p) {
    const auto rows = r.u64();
    const auto cols = r.u64();
    if (rows != p.rows() || cols != p.cols()) {
      r.fail("parameter shape " + std::to_string(rows) + "x" + std::to_string(cols) +
             " does not match expected " + p.value.shape_string());
    }
    for (auto& v : p.value.flat()) v = static_cast<T>(r.f32());
  });

  auto next = r.raw<4>();
  if (next == kRegressorTag) {
    const auto m = r.u64();
    if (m != ckpt.feature_dim) r.fail("regressor feature dimension mismatch");
    rl::ValueRegressor reg(m);
    const bool fitted = r.u8() != 0;
    for (auto& v : reg.weight().value.flat()) v = r.f64();
    reg.bias().value(0, 0) = r.f64();
    reg.set_fitted(fitted);
    ckpt.regressor = std::move(reg);
    next = r.raw<4>();
  }
  if (next != kEndTag) r.fail("missing end tag");
  return ckpt;
}

template void save_checkpoint(const std::filesystem::path&, const Checkpoint<float>&);
template void save_checkpoint(const std::filesystem::path&, const Checkpoint<double>&);
template Checkpoint<float> load_checkpoint(const std::filesystem::path&);
template Checkpoint<double> load_checkpoint(const std::filesystem::path&);

}  // namespace sagerl::model
