#include "rybsign/economy_io.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rybsign/error.hpp"

namespace rybsign::io {

namespace {

namespace pt = boost::property_tree;

pt::ptree::path_type key(const std::string& k) { return pt::ptree::path_type(k, '/'); }

const pt::ptree* section(const pt::ptree& root, const std::string& name) {
  const auto child = root.get_child_optional(key(name));
  return child ? &*child : nullptr;
}

std::optional<double> number(const pt::ptree& sec, const std::string& sec_name,
                             const std::string& k) {
  const auto raw = sec.get_optional<std::string>(key(k));
  if (!raw) return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(*raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != raw->size() || !std::isfinite(v))
    throw Error(ErrorCode::ParseError, "[" + sec_name + "] " + k + " is not a number: '" + *raw + "'");
  return v;
}

double required(const pt::ptree& sec, const std::string& sec_name, const std::string& k) {
  const auto v = number(sec, sec_name, k);
  if (!v) throw Error(ErrorCode::ParseError, "[" + sec_name + "] missing " + k);
  return *v;
}

std::string pair_key(const std::string& prefix, Factor i, Factor h) {
  return prefix + std::string(symbol(i)) + std::string(symbol(h));
}

Economy parse_economy(const pt::ptree& root) {
  const pt::ptree* dist = section(root, "distributive");
  const pt::ptree* inc = section(root, "income");
  if (!inc) throw Error(ErrorCode::ParseError, "missing [income] section");
  FactorByGood theta{};
  for (Factor i : kFactors)
    for (Good j : kGoods)
      theta[idx(i)][idx(j)] =
          required(*dist, "distributive", "theta_" + std::string(symbol(i)) + std::string(symbol(j)));
  const DistributiveShares distributive(theta);
  const PerGood<double> goods{required(*inc, "income", "theta_1"), required(*inc, "income", "theta_2")};

  ElasticityTensor sigma{};
  bool has_own = true;
  for (Good j : kGoods) {
    const std::string name = "allen.sector" + std::string(symbol(j));
    const pt::ptree* sec = section(root, name);
    if (!sec) throw Error(ErrorCode::ParseError, "missing [" + name + "] section");
    const std::string prefix = "sigma" + std::string(symbol(j)) + "_";
    for (Factor i : kFactors) {
      for (Factor h : kFactors) {
        if (idx(h) < idx(i)) continue;
        double v = 0.0;
        if (i == h) {
          const auto own = number(*sec, name, pair_key(prefix, i, h));
          has_own = has_own && own.has_value();
          v = own.value_or(0.0);
        } else {
          v = required(*sec, name, pair_key(prefix, i, h));
        }
        sigma[idx(j)][idx(i)][idx(h)] = sigma[idx(j)][idx(h)][idx(i)] = v;
      }
    }
  }
  const AllenMatrix allen =
      has_own ? AllenMatrix(sigma) : AllenMatrix::from_off_diagonal(distributive, sigma);
  Economy economy = Economy::from_shares(distributive, goods, allen);

  // Optional factor shares must agree with the ones implied by the goods.
  for (Factor i : kFactors) {
    const auto given = number(*inc, "income", "theta_" + std::string(symbol(i)));
    if (given && std::abs(*given - economy.income().factor(i)) > kShareTolerance)
      throw Error(ErrorCode::InvalidShares,
                  "theta_" + std::string(symbol(i)) + " disagrees with sum_j theta_j theta_ij");
  }
  return economy;
}

oracle::GLEconomy parse_gl(const pt::ptree& sec) {
  oracle::GLEconomy gl;
  for (Good j : kGoods) {
    const std::string prefix = "b" + std::string(symbol(j)) + "_";
    for (Factor i : kFactors)
      for (Factor h : kFactors) {
        if (idx(h) < idx(i)) continue;
        const double v = required(sec, "gl", pair_key(prefix, i, h));
        gl.b[idx(j)][idx(i)][idx(h)] = gl.b[idx(j)][idx(h)][idx(i)] = v;
      }
    gl.p[idx(j)] = required(sec, "gl", "p_" + std::string(symbol(j)));
  }
  for (Factor i : kFactors) gl.v[idx(i)] = required(sec, "gl", "v_" + std::string(symbol(i)));
  return gl;
}

}  // namespace

std::string format_number(double v) { return fmt::format("{}", v); }

EconomyDocument parse_document(const std::string& text) {
  // The INI reader only knows ';' comments; accept '#' as well.
  std::istringstream in(text);
  std::ostringstream cleaned;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '#') continue;
    cleaned << line << '\n';
  }
  pt::ptree root;
  std::istringstream src(cleaned.str());
  try {
    pt::ini_parser::read_ini(src, root);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::ParseError, e.message() + " at line " + std::to_string(e.line()));
  }
  EconomyDocument doc;
  if (section(root, "distributive")) doc.economy = parse_economy(root);
  if (const pt::ptree* gl = section(root, "gl")) doc.gl = parse_gl(*gl);
  if (!doc.economy && !doc.gl)
    throw Error(ErrorCode::ParseError, "document has neither [distributive] nor [gl]");
  return doc;
}

EconomyDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::DataError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

Economy load_economy(const std::filesystem::path& path) {
  EconomyDocument doc = load_document(path);
  if (!doc.economy) throw Error(ErrorCode::ParseError, path.string() + " has no economy sections");
  return *doc.economy;
}

std::string write_economy(const Economy& economy) {
  std::string out = "[distributive]\n";
  for (Factor i : kFactors)
    for (Good j : kGoods)
      out += fmt::format("theta_{}{} = {}\n", symbol(i), symbol(j),
                         format_number(economy.distributive()(i, j)));
  out += "\n[income]\n";
  for (Good j : kGoods)
    out += fmt::format("theta_{} = {}\n", symbol(j), format_number(economy.income().good(j)));
  for (Factor i : kFactors)
    out += fmt::format("theta_{} = {}\n", symbol(i), format_number(economy.income().factor(i)));
  for (Good j : kGoods) {
    out += fmt::format("\n[allen.sector{}]\n", symbol(j));
    for (Factor i : kFactors)
      for (Factor h : kFactors)
        if (idx(h) >= idx(i))
          out += fmt::format("sigma{}_{}{} = {}\n", symbol(j), symbol(i), symbol(h),
                             format_number(economy.allen()(j, i, h)));
  }
  return out;
}

std::string write_gl(const oracle::GLEconomy& gl) {
  std::string out = "[gl]\n";
  for (Good j : kGoods)
    for (Factor i : kFactors)
      for (Factor h : kFactors)
        if (idx(h) >= idx(i))
          out += fmt::format("b{}_{}{} = {}\n", symbol(j), symbol(i), symbol(h),
                             format_number(gl.b[idx(j)][idx(i)][idx(h)]));
  for (Good j : kGoods) out += fmt::format("p_{} = {}\n", symbol(j), format_number(gl.p[idx(j)]));
  for (Factor i : kFactors)
    out += fmt::format("v_{} = {}\n", symbol(i), format_number(gl.v[idx(i)]));
  return out;
}

}  // namespace rybsign::io
