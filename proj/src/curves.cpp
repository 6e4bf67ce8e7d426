#include <charconv>
#include <cmath>
#include <cstdio>

#include "bbmis/bounds.hpp"
#include "bbmis/error.hpp"
#include "bbmis/harness.hpp"

namespace bbmis::harness {

namespace {

std::vector<std::string> columns_for(CurveKind kind) {
  switch (kind) {
    case CurveKind::lambda: return {"k", "lambda"};
    case CurveKind::gamma: return {"k", "gamma", "x_star"};
    case CurveKind::g_upper: return {"k", "g", "base"};
    case CurveKind::lower: return {"k", "exponent", "base"};
  }
  return {};
}

std::vector<double> row_for(CurveKind kind, double k) {
  switch (kind) {
    case CurveKind::lambda: return {k, bounds::lambda_of_k(k)};
    case CurveKind::gamma: {
      const auto pt = bounds::gamma_of_k(k);
      return {k, pt.gamma, pt.x_star};
    }
    case CurveKind::g_upper: {
      const double g = bounds::g_of_k(k);
      return {k, g, std::exp(g)};
    }
    case CurveKind::lower: {
      const double e = bounds::exhaustive_lower_exponent(k);
      return {k, e, std::exp(e)};
    }
  }
  return {};
}

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const char* curve_name(CurveKind kind) {
  switch (kind) {
    case CurveKind::lambda: return "lambda";
    case CurveKind::gamma: return "gamma";
    case CurveKind::g_upper: return "g_upper";
    case CurveKind::lower: return "lower";
  }
  return "?";
}

CurveKind parse_curve_kind(std::string_view name) {
  if (name == "lambda") return CurveKind::lambda;
  if (name == "gamma") return CurveKind::gamma;
  if (name == "g_upper" || name == "g") return CurveKind::g_upper;
  if (name == "lower") return CurveKind::lower;
  throw ConfigError("unknown curve kind '" + std::string(name) + "'");
}

CurveTable compute_curve(CurveKind kind, double k_min, double k_max, std::size_t steps, CurveScale scale) {
  if (!(k_min > 0.0) || !(k_max > k_min) || !std::isfinite(k_max))
    throw DomainError("emit_curve: requires 0 < k_min < k_max");
  if (steps < 2) throw DomainError("emit_curve: requires steps >= 2");
  CurveTable t{kind, columns_for(kind), {}};
  const double span = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) {
    const double f = static_cast<double>(i) / span;
    double k = scale == CurveScale::log ? std::exp(std::log(k_min) + f * (std::log(k_max) - std::log(k_min)))
                                        : k_min + f * (k_max - k_min);
    if (i == 0) k = k_min;
    if (i + 1 == steps) k = k_max;
    t.rows.push_back(row_for(kind, k));
  }
  return t;
}

std::string curve_to_csv(const CurveTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) out += (c ? "," : "") + table.columns[c];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + num17(row[c]);
    out += '\n';
  }
  return out;
}

std::string curve_to_data(const CurveTable& table) {
  std::string out;
  for (const auto& row : table.rows) out += num17(row[0]) + ' ' + num17(row[1]) + '\n';
  return out;
}

CurveTable parse_curve_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) throw ParseError("curve CSV: missing header", 1);

  std::optional<CurveKind> kind;
  for (CurveKind k : {CurveKind::lambda, CurveKind::gamma, CurveKind::g_upper, CurveKind::lower}) {
    std::string header;
    for (const auto& c : columns_for(k)) header += (header.empty() ? "" : ",") + c;
    if (lines[0] == header) kind = k;
  }
  if (!kind) throw ParseError("curve CSV: unknown header '" + std::string(lines[0]) + "'", 1);

  CurveTable t{*kind, columns_for(*kind), {}};
  for (std::size_t li = 1; li < lines.size(); ++li) {
    std::vector<double> row;
    std::string_view rest = lines[li];
    while (true) {
      const std::size_t comma = rest.find(',');
      const auto field = rest.substr(0, comma);
      double v = 0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("curve CSV: malformed number '" + std::string(field) + "'", li + 1);
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (row.size() != t.columns.size()) throw ParseError("curve CSV: wrong field count", li + 1);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string emit_curve(CurveKind kind, double k_min, double k_max, std::size_t steps, CurveScale scale) {
  return curve_to_csv(compute_curve(kind, k_min, k_max, steps, scale));
}

}  // namespace bbmis::harness
