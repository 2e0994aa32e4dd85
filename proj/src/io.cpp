#include "qhopf/io.hpp"

#include <fstream>
#include <sstream>

namespace qhopf {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& reason) {
  throw ParseError(where + ": " + reason, 0, 0);
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing key \"") + key + "\"");
  return *it;
}

int as_index(const json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where, "expected an integer index");
  const auto v = j.get<long long>();
  if (v < 0 || v > std::numeric_limits<int>::max()) throw ShapeError(where + ": index out of range");
  return static_cast<int>(v);
}

void check_range(int i, int dim, const std::string& where) {
  if (i >= dim) {
    throw ShapeError(where + ": index " + std::to_string(i) + " out of range [0," +
                     std::to_string(dim) + ")");
  }
}

const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  return j;
}

}  // namespace

json field_to_json(const Field& field) {
  if (field.is_prime()) return json{{"kind", "prime"}, {"p", field.characteristic()}};
  return json{{"kind", "rational"}};
}

Field field_from_json(const json& j) {
  const json& kind = member(j, "kind", "field");
  if (kind == "rational") return Field::rational();
  if (kind != "prime") schema_error("field", "kind must be \"prime\" or \"rational\"");
  const json& p = member(j, "p", "field");
  if (!p.is_number_unsigned()) schema_error("field", "p must be a positive integer");
  try {
    return Field::prime(p.get<std::uint64_t>());
  } catch (const std::invalid_argument& e) {
    schema_error("field", e.what());
  }
}

Scalar scalar_from_json(const json& j, const Field& field) {
  try {
    if (j.is_string()) return Scalar::parse(field, j.get<std::string>());
    if (j.is_number_integer()) return Scalar(field, j.get<long long>());
  } catch (const std::invalid_argument& e) {
    schema_error("scalar", e.what());
  }
  schema_error("scalar", "expected a decimal string");
}

json tensor_to_json(const SparseTensor& t) {
  json entries = json::array();
  for (const Entry& e : t.entries()) entries.push_back(json::array({t.indices_of(e.key), e.value.to_string()}));
  return json{{"arity", t.arity()}, {"entries", std::move(entries)}};
}

SparseTensor tensor_from_json(const json& j, const Field& field, int dim, int expected_arity,
                              const std::string& where) {
  const json& ar = member(j, "arity", where);
  if (!ar.is_number_integer() || ar.get<long long>() < 0 || ar.get<long long>() > 8) {
    schema_error(where, "arity must be an integer in [0,8]");
  }
  const int arity = ar.get<int>();
  if (expected_arity >= 0 && arity != expected_arity) {
    throw ShapeError(where + ": expected arity " + std::to_string(expected_arity) + ", got " +
                     std::to_string(arity));
  }
  TensorBuilder b(field, dim, arity);
  std::vector<int> idx;
  for (const json& e : as_array(member(j, "entries", where), where + ".entries")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_array()) {
      schema_error(where, "each entry must be [[indices], \"scalar\"]");
    }
    if (static_cast<int>(e[0].size()) != arity) {
      throw ShapeError(where + ": entry with " + std::to_string(e[0].size()) +
                       " indices in a tensor of arity " + std::to_string(arity));
    }
    idx.clear();
    for (const json& i : e[0]) {
      idx.push_back(as_index(i, where));
      check_range(idx.back(), dim, where);
    }
    b.add(std::span<const int>(idx), scalar_from_json(e[1], field));
  }
  return std::move(b).build();
}

json to_json(const QuasiHopfDatum& d) {
  const int n = d.dim();
  json product = json::array();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (const Term& t : d.algebra().product(i, j)) {
        product.push_back(json::array({i, j, t.index, t.coeff.to_string()}));
      }
    }
  }
  json delta = json::array();
  for (int i = 0; i < n; ++i) {
    for (const Entry& e : d.delta().row(i)) {
      delta.push_back(json::array({i, static_cast<int>(e.key / n), static_cast<int>(e.key % n),
                                   e.value.to_string()}));
    }
  }
  json epsilon = json::array();
  for (int i = 0; i < n; ++i) {
    const auto& row = d.epsilon().row(i);
    epsilon.push_back(row.empty() ? std::string("0") : row[0].value.to_string());
  }
  json antipode = json::array();
  for (int i = 0; i < n; ++i) {
    for (const Entry& e : d.antipode().row(i)) {
      antipode.push_back(json::array({i, static_cast<int>(e.key), e.value.to_string()}));
    }
  }
  json out{{"field", field_to_json(d.field())},
           {"dim", n},
           {"product", std::move(product)},
           {"unit", tensor_to_json(d.algebra().unit())},
           {"delta", std::move(delta)},
           {"epsilon", std::move(epsilon)},
           {"phi", tensor_to_json(d.phi())},
           {"antipode", std::move(antipode)},
           {"alpha", tensor_to_json(d.alpha())},
           {"beta", tensor_to_json(d.beta())}};
  if (d.has_R()) out["R"] = tensor_to_json(d.R());
  if (d.v()) out["v"] = tensor_to_json(*d.v());
  if (!d.metadata().empty()) out["metadata"] = d.metadata();
  if (d.parts().phi_inverse) out["phi_inverse"] = tensor_to_json(*d.parts().phi_inverse);
  return out;
}

std::string save(const QuasiHopfDatum& d) { return to_json(d).dump(1) + "\n"; }

QuasiHopfDatum load(const json& doc) {
  if (!doc.is_object()) schema_error("document", "expected a JSON object");
  const Field field = field_from_json(member(doc, "field", "document"));
  const json& dim_j = member(doc, "dim", "document");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() <= 0 || dim_j.get<long long>() > 4096) {
    schema_error("dim", "must be a positive integer (at most 4096)");
  }
  const int n = dim_j.get<int>();

  std::vector<std::vector<Term>> table(static_cast<std::size_t>(n) * n);
  for (const json& row : as_array(member(doc, "product", "document"), "product")) {
    if (!row.is_array() || row.size() != 4) schema_error("product", "rows are [i, j, k, \"scalar\"]");
    const int i = as_index(row[0], "product");
    const int j = as_index(row[1], "product");
    const int k = as_index(row[2], "product");
    for (int x : {i, j, k}) check_range(x, n, "product");
    const Scalar c = scalar_from_json(row[3], field);
    if (!c.is_zero()) table[static_cast<std::size_t>(i) * n + j].push_back({k, c});
  }
  for (auto& cell : table) {
    std::sort(cell.begin(), cell.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
    std::vector<Term> merged;
    for (Term& t : cell) {
      if (!merged.empty() && merged.back().index == t.index) {
        merged.back().coeff += t.coeff;
      } else {
        merged.push_back(std::move(t));
      }
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff.is_zero(); });
    cell = std::move(merged);
  }
  SparseTensor unit = tensor_from_json(member(doc, "unit", "document"), field, n, 1, "unit");

  std::vector<std::vector<Entry>> delta_rows(static_cast<std::size_t>(n));
  for (const json& row : as_array(member(doc, "delta", "document"), "delta")) {
    if (!row.is_array() || row.size() != 4) schema_error("delta", "rows are [i, j, k, \"scalar\"]");
    const int i = as_index(row[0], "delta");
    const int j = as_index(row[1], "delta");
    const int k = as_index(row[2], "delta");
    for (int x : {i, j, k}) check_range(x, n, "delta");
    delta_rows[i].push_back({static_cast<Key>(j) * n + k, scalar_from_json(row[3], field)});
  }

  const json& eps_j = as_array(member(doc, "epsilon", "document"), "epsilon");
  if (static_cast<int>(eps_j.size()) != n) {
    throw ShapeError("epsilon: expected " + std::to_string(n) + " values, got " + std::to_string(eps_j.size()));
  }
  std::vector<std::vector<Entry>> eps_rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eps_rows[i].push_back({0, scalar_from_json(eps_j[i], field)});

  std::vector<std::vector<Entry>> s_rows(static_cast<std::size_t>(n));
  for (const json& row : as_array(member(doc, "antipode", "document"), "antipode")) {
    if (!row.is_array() || row.size() != 3) schema_error("antipode", "rows are [i, j, \"scalar\"]");
    const int i = as_index(row[0], "antipode");
    const int j = as_index(row[1], "antipode");
    check_range(i, n, "antipode");
    check_range(j, n, "antipode");
    s_rows[i].push_back({static_cast<Key>(j), scalar_from_json(row[2], field)});
  }

  DatumParts parts{
      Algebra(field, n, std::move(table), std::move(unit)),
      LinearMap(field, n, 2, std::move(delta_rows)),
      LinearMap(field, n, 0, std::move(eps_rows)),
      tensor_from_json(member(doc, "phi", "document"), field, n, 3, "phi"),
      LinearMap(field, n, 1, std::move(s_rows)),
      tensor_from_json(member(doc, "alpha", "document"), field, n, 1, "alpha"),
      tensor_from_json(member(doc, "beta", "document"), field, n, 1, "beta"),
  };
  if (doc.contains("R")) parts.R = tensor_from_json(doc["R"], field, n, 2, "R");
  if (doc.contains("v")) parts.v = tensor_from_json(doc["v"], field, n, 1, "v");
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object()) schema_error("metadata", "expected an object");
    parts.metadata = doc["metadata"];
  }
  if (doc.contains("phi_inverse")) {
    parts.phi_inverse = tensor_from_json(doc["phi_inverse"], field, n, 3, "phi_inverse");
  }
  return QuasiHopfDatum(std::move(parts));
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line and column.
    const std::size_t pos = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string reason = e.what();
    if (auto colon = reason.rfind(": "); colon != std::string::npos) reason = reason.substr(colon + 2);
    throw ParseError(reason, line, column);
  }
}

QuasiHopfDatum load_text(std::string_view text) { return load(parse_json(text)); }

QuasiHopfDatum load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_text(ss.str());
}

}  // namespace qhopf
