#include "coefbound/reports.hpp"

#include <json.hpp>

namespace coefbound {

using nlohmann::ordered_json;

namespace {

// "key=value;key=value" into an object; free text stays a string
ordered_json detail_object(const std::string& detail) {
  ordered_json obj = ordered_json::object();
  std::size_t start = 0;
  while (start < detail.size()) {
    std::size_t end = detail.find(';', start);
    if (end == std::string::npos) end = detail.size();
    const std::string item = detail.substr(start, end - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) return detail;
    obj[item.substr(0, eq)] = item.substr(eq + 1);
    start = end + 1;
  }
  return obj;
}

void write_csv_line(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << '\n';
}

std::string optional_int(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }

}  // namespace

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

void write_suite(std::ostream& out, const std::vector<SuiteReport>& rows, Format format) {
  if (format == Format::Csv) {
    write_csv_line(out, {"suite", "n", "alpha", "beta", "k", "pass", "worst_margin", "detail", "witness_seed",
                         "witness"});
    for (const SuiteReport& r : rows)
      write_csv_line(out, {r.suite, optional_int(r.n), r.alpha, r.beta.value_or(""), std::to_string(r.k),
                           r.pass ? "true" : "false", r.worst_margin, r.detail,
                           r.witness_seed ? std::to_string(*r.witness_seed) : "", r.witness});
    return;
  }

  // suite -> grid point -> rows, in order of first appearance
  ordered_json suites = ordered_json::array();
  for (const SuiteReport& r : rows) {
    if (suites.empty() || suites.back()["suite"] != r.suite)
      suites.push_back({{"suite", r.suite}, {"pass", true}, {"points", ordered_json::array()}});
    ordered_json& suite = suites.back();
    ordered_json& points = suite["points"];
    ordered_json key = {{"n", r.n ? ordered_json(*r.n) : ordered_json(nullptr)},
                        {"alpha", r.alpha.empty() ? ordered_json(nullptr) : ordered_json(r.alpha)},
                        {"beta", r.beta ? ordered_json(*r.beta) : ordered_json(nullptr)}};
    if (points.empty() || points.back()["n"] != key["n"] || points.back()["alpha"] != key["alpha"] ||
        points.back()["beta"] != key["beta"]) {
      key["pass"] = true;
      key["rows"] = ordered_json::array();
      points.push_back(std::move(key));
    }
    ordered_json& point = points.back();
    ordered_json item = {{"k", r.k}, {"pass", r.pass}, {"worst_margin", r.worst_margin},
                         {"detail", detail_object(r.detail)}};
    if (r.witness_seed) item["witness_seed"] = *r.witness_seed;
    if (!r.witness.empty()) {
      const auto parsed = ordered_json::parse(r.witness, nullptr, false);
      item["witness"] = parsed.is_discarded() ? ordered_json(r.witness) : parsed;
    }
    point["rows"].push_back(std::move(item));
    if (!r.pass) {
      point["pass"] = false;
      suite["pass"] = false;
    }
  }
  out << ordered_json{{"pass", all_pass(rows)}, {"suites", suites}}.dump(2) << '\n';
}

void write_bounds(std::ostream& out, const std::vector<BoundsRow>& rows, Format format) {
  if (format == Format::Csv) {
    write_csv_line(out, {"n", "alpha", "beta", "k", "sharp_bound", "theorem1_bound", "region", "theorem2_estimate"});
    for (const BoundsRow& r : rows)
      write_csv_line(out, {std::to_string(r.n), r.alpha, r.beta, std::to_string(r.k), r.sharp_bound,
                           r.theorem1_bound, r.region, r.theorem2_estimate});
    return;
  }
  ordered_json list = ordered_json::array();
  for (const BoundsRow& r : rows)
    list.push_back({{"n", r.n},
                    {"alpha", r.alpha},
                    {"beta", r.beta},
                    {"k", r.k},
                    {"sharp_bound", r.sharp_bound},
                    {"theorem1_bound", r.theorem1_bound.empty() ? ordered_json(nullptr) : ordered_json(r.theorem1_bound)},
                    {"region", r.region},
                    {"theorem2_estimate", r.theorem2_estimate}});
  out << ordered_json{{"bounds", list}}.dump(2) << '\n';
}

template <Scalar S>
void write_expand(std::ostream& out, const ExpandResult<S>& result, Format format) {
  const auto& reports = result.reports;
  auto report_for = [&](int k) -> const BoundReport<S>* {
    for (const auto& r : reports)
      if (r.k == k) return &r;
    return nullptr;
  };

  if (format == Format::Csv) {
    write_csv_line(out, {"k", "re", "im", "abs", "bound", "bound_source", "region", "margin", "sharp_hit"});
    for (int k = 0; k <= result.f.order(); ++k) {
      const Complex<S>& a = result.f[k];
      std::vector<std::string> line{std::to_string(k), format_scalar(a.re), format_scalar(a.im),
                                    format_scalar(modulus(a))};
      if (const auto* r = report_for(k)) {
        line.insert(line.end(), {format_scalar(r->bound), std::string(to_string(r->bound_source)),
                                 std::string(to_string(r->region)), format_scalar(r->margin),
                                 r->sharp_hit ? "true" : "false"});
      } else {
        line.insert(line.end(), 5, std::string());
      }
      write_csv_line(out, line);
    }
    out << "# membership_min_re," << format_scalar(result.membership) << ",radius," << format_scalar(result.radius)
        << ",samples," << result.samples << ",tail," << format_scalar(truncation_tail_bound(result.radius, result.f.order()))
        << '\n';
    return;
  }

  ordered_json coeffs = ordered_json::array();
  for (int k = 0; k <= result.f.order(); ++k)
    coeffs.push_back({{"k", k}, {"re", format_scalar(result.f[k].re)}, {"im", format_scalar(result.f[k].im)}});
  ordered_json bounds = ordered_json::array();
  for (const auto& r : reports)
    bounds.push_back({{"k", r.k},
                      {"abs", format_scalar(r.a_k_abs)},
                      {"bound", format_scalar(r.bound)},
                      {"bound_source", to_string(r.bound_source)},
                      {"region", to_string(r.region)},
                      {"margin", format_scalar(r.margin)},
                      {"sharp_hit", r.sharp_hit}});
  out << ordered_json{{"coefficients", coeffs},
                      {"bounds", bounds},
                      {"membership", {{"min_re", format_scalar(result.membership)},
                                      {"radius", format_scalar(result.radius)},
                                      {"samples", result.samples},
                                      {"tail", format_scalar(truncation_tail_bound(result.radius, result.f.order()))}}}}
             .dump(2)
      << '\n';
}

template void write_expand<double>(std::ostream&, const ExpandResult<double>&, Format);
template void write_expand<Rational>(std::ostream&, const ExpandResult<Rational>&, Format);

}  // namespace coefbound
