#include "bregman/serialization.hpp"

#include "bregman/errors.hpp"
#include "bregman/linalg.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace bregman::io {

using nlohmann::json;

namespace {

void put_u64(std::string& out, std::uint64_t value) {
  for (int byte = 0; byte < 8; ++byte) {
    out.push_back(static_cast<char>((value >> (8 * byte)) & 0xFFu));
  }
}

std::uint64_t get_u64(std::string_view in, std::size_t offset) {
  std::uint64_t value = 0;
  for (int byte = 0; byte < 8; ++byte) {
    value |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[offset + byte])) << (8 * byte);
  }
  return value;
}

class PayloadWriter {
public:
  void add_f64(const std::string& name, const double* data, std::size_t count, json shape) {
    const std::size_t offset = payload_.size();
    for (std::size_t i = 0; i < count; ++i) put_u64(payload_, std::bit_cast<std::uint64_t>(data[i]));
    describe(name, "f64le", std::move(shape), offset);
  }

  void add_i64(const std::string& name, const std::vector<std::uint64_t>& data) {
    const std::size_t offset = payload_.size();
    for (std::uint64_t value : data) put_u64(payload_, value);
    describe(name, "i64le", json::array({data.size()}), offset);
  }

  std::string finish(json header) {
    header["arrays"] = arrays_;
    std::string out(kInstanceMagic);
    out.push_back('\n');
    out += header.dump();
    out.push_back('\n');
    out += payload_;
    return out;
  }

private:
  void describe(const std::string& name, const char* dtype, json shape, std::size_t offset) {
    arrays_.push_back({{"name", name},
                       {"dtype", dtype},
                       {"shape", std::move(shape)},
                       {"offset", offset},
                       {"bytes", payload_.size() - offset}});
  }

  std::string payload_;
  json arrays_ = json::array();
};

struct ArrayView {
  std::string dtype;
  std::vector<std::size_t> shape;
  std::string_view bytes;

  std::size_t count() const {
    std::size_t total = 1;
    for (std::size_t d : shape) total *= d;
    return total;
  }
};

class PayloadReader {
public:
  PayloadReader(const json& header, std::string_view payload) {
    if (!header.contains("arrays") || !header["arrays"].is_array()) {
      throw InputError("instance header has no array table");
    }
    for (const json& entry : header["arrays"]) {
      ArrayView view;
      view.dtype = entry.at("dtype").get<std::string>();
      view.shape = entry.at("shape").get<std::vector<std::size_t>>();
      const auto offset = entry.at("offset").get<std::size_t>();
      const auto length = entry.at("bytes").get<std::size_t>();
      if (offset > payload.size() || length > payload.size() - offset) {
        throw InputError("instance payload is truncated (array '" +
                         entry.at("name").get<std::string>() + "')");
      }
      if (length != view.count() * 8) {
        throw InputError("instance array '" + entry.at("name").get<std::string>() +
                         "' has inconsistent byte length");
      }
      view.bytes = payload.substr(offset, length);
      arrays_[entry.at("name").get<std::string>()] = view;
    }
  }

  bool has(const std::string& name) const { return arrays_.count(name) != 0; }

  const ArrayView& get(const std::string& name, const char* dtype) const {
    auto it = arrays_.find(name);
    if (it == arrays_.end()) throw InputError("instance is missing array '" + name + "'");
    if (it->second.dtype != dtype) {
      throw InputError("instance array '" + name + "' has dtype " + it->second.dtype);
    }
    return it->second;
  }

  RealVector vector(const std::string& name, std::size_t expected) const {
    const ArrayView& view = get(name, "f64le");
    if (view.count() != expected) throw InputError("instance array '" + name + "' has wrong size");
    RealVector out(static_cast<Eigen::Index>(expected));
    for (std::size_t i = 0; i < expected; ++i) {
      out[static_cast<Eigen::Index>(i)] = std::bit_cast<double>(get_u64(view.bytes, 8 * i));
    }
    return out;
  }

  DenseMatrix matrix(const std::string& name, std::size_t rows, std::size_t cols) const {
    const ArrayView& view = get(name, "f64le");
    if (view.shape != std::vector<std::size_t>{rows, cols}) {
      throw InputError("instance array '" + name + "' has wrong shape");
    }
    DenseMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    double* data = out.data();
    for (std::size_t i = 0; i < rows * cols; ++i) {
      data[i] = std::bit_cast<double>(get_u64(view.bytes, 8 * i));
    }
    return out;
  }

  std::vector<std::uint64_t> indices(const std::string& name) const {
    const ArrayView& view = get(name, "i64le");
    std::vector<std::uint64_t> out(view.count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = get_u64(view.bytes, 8 * i);
    return out;
  }

private:
  std::map<std::string, ArrayView> arrays_;
};

json base_header(const char* kind, std::optional<double> mu) {
  json header;
  header["format"] = "bregman-instance";
  header["version"] = 1;
  header["kind"] = kind;
  header["mu"] = mu ? json(*mu) : json(nullptr);
  return header;
}

}  // namespace

std::string encode_instance(const BasisPursuitProblem& problem, std::optional<double> mu) {
  json header = base_header("basis-pursuit", mu);
  header["m"] = problem.a.rows();
  header["n"] = problem.a.cols();
  if (problem.meta) {
    const BpGenMeta& meta = *problem.meta;
    header["generator"] = {{"matrix", to_string(meta.matrix)},
                           {"signal", to_string(meta.signal)},
                           {"s", meta.s},
                           {"seed", meta.seed},
                           {"nonnegative", meta.nonnegative},
                           {"rng", linalg::RngStream::kAlgorithm}};
  }
  PayloadWriter writer;
  writer.add_f64("a", problem.a.data(), static_cast<std::size_t>(problem.a.size()),
                 json::array({problem.a.rows(), problem.a.cols()}));
  writer.add_f64("b", problem.b.data(), static_cast<std::size_t>(problem.b.size()),
                 json::array({problem.b.size()}));
  if (problem.x_true) {
    writer.add_f64("x_true", problem.x_true->data(), static_cast<std::size_t>(problem.x_true->size()),
                   json::array({problem.x_true->size()}));
  }
  return writer.finish(std::move(header));
}

std::string encode_instance(const MatrixCompletionProblem& problem, std::optional<double> mu) {
  json header = base_header("matrix-completion", mu);
  header["n"] = problem.n;
  header["r"] = problem.r;
  header["p"] = problem.samples();
  header["sr"] = problem.sampling_ratio();
  header["fr"] = problem.dof_ratio();
  if (problem.meta) {
    header["generator"] = {{"fr", problem.meta->fr},
                           {"seed", problem.meta->seed},
                           {"rng", linalg::RngStream::kAlgorithm}};
  }
  PayloadWriter writer;
  writer.add_i64("omega", problem.omega);
  writer.add_f64("observed", problem.observed.data(), static_cast<std::size_t>(problem.observed.size()),
                 json::array({problem.observed.size()}));
  if (problem.m_true) {
    writer.add_f64("m_true", problem.m_true->data(), static_cast<std::size_t>(problem.m_true->size()),
                   json::array({problem.m_true->rows(), problem.m_true->cols()}));
  }
  return writer.finish(std::move(header));
}

Instance decode_instance(std::string_view bytes) {
  const std::size_t first = bytes.find('\n');
  if (first == std::string_view::npos || bytes.substr(0, first) != kInstanceMagic) {
    throw InputError("not a bregman instance file (bad magic line)");
  }
  const std::size_t second = bytes.find('\n', first + 1);
  if (second == std::string_view::npos) throw InputError("instance header is truncated");

  json header;
  try {
    header = json::parse(bytes.substr(first + 1, second - first - 1));
  } catch (const json::exception& e) {
    throw InputError(std::string("instance header is not valid JSON: ") + e.what());
  }
  const std::string_view payload = bytes.substr(second + 1);

  try {
    Instance out;
    if (header.contains("mu") && header["mu"].is_number()) out.mu = header["mu"].get<double>();
    const PayloadReader reader(header, payload);
    const std::string kind = header.at("kind").get<std::string>();
    if (kind == "basis-pursuit") {
      const auto m = header.at("m").get<std::size_t>();
      const auto n = header.at("n").get<std::size_t>();
      BasisPursuitProblem problem;
      problem.a = reader.matrix("a", m, n);
      problem.b = reader.vector("b", m);
      if (reader.has("x_true")) problem.x_true = reader.vector("x_true", n);
      if (header.contains("generator")) {
        const json& g = header["generator"];
        problem.meta = BpGenMeta{matrix_kind_from_string(g.at("matrix").get<std::string>()),
                                 signal_kind_from_string(g.at("signal").get<std::string>()),
                                 n,
                                 m,
                                 g.at("s").get<std::size_t>(),
                                 g.at("seed").get<std::uint64_t>(),
                                 g.value("nonnegative", false)};
      }
      if (!problem.a.allFinite() || !problem.b.allFinite()) {
        throw InputError("instance contains non-finite values");
      }
      out.problem = std::move(problem);
    } else if (kind == "matrix-completion") {
      MatrixCompletionProblem problem;
      problem.n = header.at("n").get<std::size_t>();
      problem.r = header.at("r").get<std::size_t>();
      problem.omega = reader.indices("omega");
      problem.observed = reader.vector("observed", problem.omega.size());
      if (reader.has("m_true")) problem.m_true = reader.matrix("m_true", problem.n, problem.n);
      if (header.contains("generator")) {
        const json& g = header["generator"];
        problem.meta = McGenMeta{g.at("seed").get<std::uint64_t>(), g.at("fr").get<double>()};
      }
      problem.validate();
      out.problem = std::move(problem);
    } else {
      throw InputError("unknown instance kind '" + kind + "'");
    }
    return out;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed instance header: ") + e.what());
  }
}

void write_instance(const std::filesystem::path& path, const BasisPursuitProblem& problem,
                    std::optional<double> mu) {
  write_file_atomic(path, encode_instance(problem, mu));
}

void write_instance(const std::filesystem::path& path, const MatrixCompletionProblem& problem,
                    std::optional<double> mu) {
  write_file_atomic(path, encode_instance(problem, mu));
}

Instance read_instance(const std::filesystem::path& path) { return decode_instance(read_file(path)); }

std::string instance_digest(const BasisPursuitProblem& problem) {
  std::ostringstream out;
  out << "basis-pursuit m=" << problem.a.rows() << " n=" << problem.a.cols();
  if (problem.meta) {
    out << " s=" << problem.meta->s << " matrix=" << to_string(problem.meta->matrix)
        << " signal=" << to_string(problem.meta->signal) << " seed=" << problem.meta->seed;
    if (problem.meta->nonnegative) out << " nonnegative";
  }
  return out.str();
}

std::string instance_digest(const MatrixCompletionProblem& problem) {
  std::ostringstream out;
  out.precision(4);
  out << "matrix-completion n=" << problem.n << " r=" << problem.r << " p=" << problem.samples()
      << " SR=" << problem.sampling_ratio() << " FR=" << problem.dof_ratio();
  if (problem.meta) out << " seed=" << problem.meta->seed;
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open '" + temp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw InputError("failed writing '" + temp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) throw InputError("cannot move '" + temp.string() + "' to '" + path.string() + "': " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace bregman::io
