#include "tracklets/checkpoint.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <regex>

namespace tracklets {

namespace {

using nets::Matrix;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f32(std::vector<std::uint8_t>& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{bytes_[pos_ + i]} << (8 * i);
    pos_ += 4;
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::string str(std::size_t n) {
    need(n);
    std::string s(bytes_.begin() + pos_, bytes_.begin() + pos_ + n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) throw std::runtime_error("checkpoint is truncated");
  }
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

nets::NetParams<float> rebuild(const std::map<std::string, Matrix<float>>& tensors,
                               const std::string& agent) {
  nets::NetParams<float> params;
  if (tensors.count("mlp.hidden1.weight") != 0) {
    params = nets::MlpParams<float>{};
  } else {
    nets::GcnParams<float> gcn;
    std::size_t layers = 0;
    while (tensors.count("gcn." + std::to_string(layers) + ".w_other") != 0) ++layers;
    if (layers == 0) throw std::runtime_error("checkpoint: " + agent + " has no network tensors");
    gcn.layers.resize(layers);
    params = std::move(gcn);
  }
  std::size_t used = 0;
  nets::for_each_tensor(params, [&](const std::string& name, Matrix<float>& m) {
    auto it = tensors.find(name);
    if (it == tensors.end()) throw std::runtime_error("checkpoint: " + agent + " lacks " + name);
    m = it->second;
    ++used;
  });
  if (used != tensors.size()) throw std::runtime_error("checkpoint: " + agent + " has unknown tensors");
  return params;
}

}  // namespace

std::vector<std::uint8_t> serialize_checkpoint(const Checkpoint& ckpt, std::uint32_t version) {
  std::vector<std::uint8_t> out(std::begin(kCheckpointMagic), std::end(kCheckpointMagic));
  put_u32(out, version);
  std::uint32_t count = 0;
  for (const auto& a : ckpt.agents) {
    nets::for_each_tensor(a, [&](const std::string&, const Matrix<float>&) { ++count; });
  }
  put_u32(out, count);
  for (std::size_t i = 0; i < ckpt.agents.size(); ++i) {
    const std::string prefix = "agent" + std::to_string(i) + "/";
    nets::for_each_tensor(ckpt.agents[i], [&](const std::string& name, const Matrix<float>& m) {
      const std::string full = prefix + name;
      put_u32(out, static_cast<std::uint32_t>(full.size()));
      out.insert(out.end(), full.begin(), full.end());
      put_u32(out, 2);
      put_u32(out, static_cast<std::uint32_t>(m.rows()));
      put_u32(out, static_cast<std::uint32_t>(m.cols()));
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) put_f32(out, m(r, c));
      }
    });
  }
  return out;
}

Checkpoint deserialize_checkpoint(const std::vector<std::uint8_t>& bytes) {
  Reader in(bytes);
  if (in.str(sizeof(kCheckpointMagic)) != std::string(kCheckpointMagic, sizeof(kCheckpointMagic))) {
    throw std::runtime_error("not a checkpoint file (bad magic)");
  }
  const std::uint32_t version = in.u32();
  if (version != kCheckpointVersion) throw CheckpointVersionError(version, kCheckpointVersion);

  static const std::regex kName(R"(agent(\d+)/(.+))");
  std::map<int, std::map<std::string, Matrix<float>>> by_agent;
  const std::uint32_t count = in.u32();
  for (std::uint32_t t = 0; t < count; ++t) {
    const std::string name = in.str(in.u32());
    std::smatch match;
    if (!std::regex_match(name, match, kName)) {
      throw std::runtime_error("checkpoint: malformed tensor name '" + name + "'");
    }
    const std::uint32_t rank = in.u32();
    if (rank != 2) throw std::runtime_error("checkpoint: tensor '" + name + "' is not rank 2");
    const std::uint32_t rows = in.u32();
    const std::uint32_t cols = in.u32();
    Matrix<float> m(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r) {
      for (std::uint32_t c = 0; c < cols; ++c) m(r, c) = in.f32();
    }
    by_agent[std::stoi(match[1].str())][match[2].str()] = std::move(m);
  }
  if (!in.done()) throw std::runtime_error("checkpoint: trailing bytes");

  Checkpoint ckpt;
  int expected = 0;
  for (const auto& [index, tensors] : by_agent) {
    if (index != expected++) throw std::runtime_error("checkpoint: agent indices are not contiguous");
    ckpt.agents.push_back(rebuild(tensors, "agent" + std::to_string(index)));
  }
  return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  const auto bytes = serialize_checkpoint(ckpt);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_checkpoint(bytes);
}

}  // namespace tracklets
