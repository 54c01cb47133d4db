#include "upslab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace upslab::io {
namespace {

GridParams grid_from_json(const json& j) {
  if (!j.contains("version") || j.at("version").get<int>() != 1)
    throw std::invalid_argument("unsupported file version");
  return make_grid(j.at("n").get<std::int64_t>(), j.at("d").get<int>());
}

Eigen::VectorXcd values_from_json(const GridParams& grid, const json& j) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || !im.is_array() ||
      static_cast<std::int64_t>(re.size()) != grid.total ||
      static_cast<std::int64_t>(im.size()) != grid.total)
    throw std::invalid_argument("re/im arrays must have length n^d");
  Eigen::VectorXcd v(grid.total);
  for (std::int64_t i = 0; i < grid.total; ++i) {
    v[i] = Complex{re.at(static_cast<std::size_t>(i)).get<double>(),
                   im.at(static_cast<std::size_t>(i)).get<double>()};
  }
  return v;
}

void values_to_json(json& j, const Eigen::VectorXcd& v) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v[i].real());
    im.push_back(v[i].imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
}

std::string method_name(RecoveryMethod m) {
  switch (m) {
    case RecoveryMethod::Dra: return "dra";
    case RecoveryMethod::Alphabet: return "alphabet";
    case RecoveryMethod::Enumeration: return "enumeration";
  }
  return "?";
}

std::string kind_name(UpKind k) {
  switch (k) {
    case UpKind::Classical: return "classical";
    case UpKind::Restriction: return "restriction";
    case UpKind::Salem: return "salem";
    case UpKind::Interpolated: return "interpolated";
  }
  return "?";
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

json signal_to_json(const Signal& s) {
  json j;
  j["version"] = 1;
  j["n"] = s.grid.n;
  j["d"] = s.grid.d;
  j["domain"] = s.domain == Domain::Space ? "space" : "frequency";
  values_to_json(j, s.values);
  return j;
}

Signal signal_from_json(const json& j) {
  const GridParams grid = grid_from_json(j);
  const std::string domain = j.at("domain").get<std::string>();
  if (domain != "space" && domain != "frequency")
    throw std::invalid_argument("domain must be \"space\" or \"frequency\"");
  return make_signal(grid, domain == "space" ? Domain::Space : Domain::Frequency,
                     values_from_json(grid, j));
}

json index_set_to_json(const IndexSet& s) {
  json j;
  j["version"] = 1;
  j["n"] = s.grid.n;
  j["d"] = s.grid.d;
  j["indices"] = s.indices;
  return j;
}

IndexSet index_set_from_json(const json& j) {
  const GridParams grid = grid_from_json(j);
  const auto idx = j.at("indices").get<std::vector<std::int64_t>>();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= grid.total)
      throw std::invalid_argument("set index out of range");
    if (i > 0 && idx[i] <= idx[i - 1])
      throw std::invalid_argument("set indices must be strictly increasing");
  }
  return IndexSet{grid, idx};
}

json masked_to_json(const MaskedSpectrum& m) {
  json j;
  j["version"] = 1;
  j["n"] = m.grid.n;
  j["d"] = m.grid.d;
  j["missing"] = m.missing.indices;
  values_to_json(j, m.observed);
  return j;
}

MaskedSpectrum masked_from_json(const json& j) {
  const GridParams grid = grid_from_json(j);
  const auto idx = j.at("missing").get<std::vector<std::int64_t>>();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= grid.total)
      throw std::invalid_argument("missing index out of range");
    if (i > 0 && idx[i] <= idx[i - 1])
      throw std::invalid_argument("missing indices must be strictly increasing");
  }
  return make_masked_spectrum(grid, IndexSet{grid, idx}, values_from_json(grid, j));
}

json profile_to_json(const GridParams& grid, const SetProfile& p,
                     std::optional<std::int64_t> energy_bruteforce) {
  json j;
  j["version"] = 1;
  j["n"] = grid.n;
  j["d"] = grid.d;
  j["size"] = p.size;
  j["dens"] = p.dens;
  j["phi"] = p.phi;
  j["lambda_salem"] = p.lambda_salem;
  j["lambda_size"] = p.lambda_size;
  j["energy"] = p.energy;
  j["lambda_energy"] = p.lambda_energy;
  j["lambda_energy_exact"] = p.lambda_energy_exact;
  j["lambda_energy_upper"] = p.lambda_energy_upper;
  if (energy_bruteforce) {
    j["energy_bruteforce"] = *energy_bruteforce;
    j["energy_agree"] = *energy_bruteforce == p.energy;
  } else {
    j["energy_bruteforce"] = nullptr;
    j["energy_agree"] = nullptr;
  }
  return j;
}

json condition_to_json(const ConditionVerdict& v) {
  json j;
  j["id"] = condition_name(v.id);
  j["lhs"] = v.lhs;
  j["threshold"] = v.threshold;
  j["satisfied"] = v.satisfied;
  j["a_posteriori"] = v.a_posteriori;
  return j;
}

json report_to_json(const RecoveryReport& r) {
  json j;
  j["version"] = 1;
  j["method"] = method_name(r.method);
  j["guaranteed"] = r.guaranteed;
  j["error_bound"] = r.error_bound;
  j["residual"] = r.residual;
  j["ambiguous"] = r.ambiguous;
  j["rounding_margin"] = r.rounding_margin;
  json conditions = json::array();
  for (const ConditionVerdict& v : r.conditions) conditions.push_back(condition_to_json(v));
  j["conditions"] = std::move(conditions);
  json support = json::array();
  for (std::int64_t x = 0; x < r.recovered.grid.total; ++x)
    if (r.recovered.values[x] != Complex{0.0, 0.0}) support.push_back(x);
  j["recovered_support"] = std::move(support);
  return j;
}

json audit_to_json(const UpAudit& a) {
  json j;
  j["kind"] = kind_name(a.kind);
  j["lhs"] = a.lhs;
  j["rhs"] = a.rhs;
  j["holds"] = a.holds;
  j["tight"] = a.tight;
  json inputs;
  inputs["support_size"] = a.support_size;
  inputs["spectrum_size"] = a.spectrum_size;
  if (a.p) inputs["p"] = *a.p;
  if (a.q) inputs["q"] = *a.q;
  if (a.constant) {
    inputs["constant"] = *a.constant;
    inputs["constant_exact"] = a.constant_exact;
  }
  j["inputs"] = std::move(inputs);
  return j;
}

std::string pgm_p2(std::int64_t width, std::int64_t height, const std::vector<int>& pixels) {
  if (static_cast<std::int64_t>(pixels.size()) != width * height)
    throw std::invalid_argument("pgm_p2: pixel count mismatch");
  std::ostringstream out;
  out << "P2\n" << width << " " << height << "\n255\n";
  for (std::int64_t row = 0; row < height; ++row) {
    for (std::int64_t col = 0; col < width; ++col) {
      const int v = std::clamp(pixels[static_cast<std::size_t>(row * width + col)], 0, 255);
      out << v << (col + 1 == width ? "\n" : " ");
    }
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace upslab::io
