#include "lipsat/io.hpp"

#include "lipsat/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace lipsat::io {

using nlohmann::json;
using saturation::MemberCertificate;
using saturation::MembershipVerdict;
using saturation::NonMemberWitness;

namespace {

[[noreturn]] void parse_error(const std::string &what) { throw Error(ErrorKind::Parse, what); }

IntegerVector parse_line(const std::string &line, std::size_t lineno) {
  IntegerVector row;
  std::string token;
  auto flush = [&] {
    if (token.empty())
      return;
    intlin::Integer x;
    if (x.set_str(token, 10) != 0)
      parse_error("line " + std::to_string(lineno) + ": '" + token + "' is not an integer");
    row.push_back(std::move(x));
    token.clear();
  };
  for (char ch : line) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',')
      flush();
    else
      token.push_back(ch);
  }
  flush();
  return row;
}

SemigroupFile finish(std::size_t dim, std::vector<IntegerVector> gens, std::string name) {
  if (gens.empty())
    parse_error("no generators given");
  std::set<IntegerVector> seen;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto &g = gens[i];
    if (g.size() != dim)
      parse_error("generator " + std::to_string(i + 1) + " has " + std::to_string(g.size()) +
                  " entries, expected " + std::to_string(dim));
    if (std::any_of(g.begin(), g.end(), [](const intlin::Integer &x) { return sgn(x) < 0; }))
      parse_error("generator " + intlin::to_string(g) + " has a negative entry");
    if (std::all_of(g.begin(), g.end(), [](const intlin::Integer &x) { return sgn(x) == 0; }))
      parse_error("generator " + std::to_string(i + 1) + " is the zero vector");
    if (!seen.insert(g).second)
      parse_error("duplicate generator " + intlin::to_string(g));
  }
  return {std::move(name), AffineSemigroup(dim, std::move(gens))};
}

} // namespace

SemigroupFile parse_semigroup(std::string_view text) {
  auto first = std::find_if(text.begin(), text.end(),
                            [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
  if (first != text.end() && *first == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::exception &e) {
      parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long>() <= 0)
      parse_error("\"dim\" must be a positive integer");
    if (!doc.contains("generators") || !doc["generators"].is_array())
      parse_error("\"generators\" must be an array of integer vectors");
    std::vector<IntegerVector> gens;
    for (const auto &g : doc["generators"])
      gens.push_back(vector_from_json(g));
    std::string name;
    if (doc.contains("name")) {
      if (!doc["name"].is_string())
        parse_error("\"name\" must be a string");
      name = doc["name"].get<std::string>();
    }
    return finish(doc["dim"].get<std::size_t>(), std::move(gens), std::move(name));
  }

  std::vector<IntegerVector> gens;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto row = parse_line(line, lineno);
    if (!row.empty())
      gens.push_back(std::move(row));
  }
  const std::size_t dim = gens.empty() ? 0 : gens.front().size();
  return finish(dim, std::move(gens), {});
}

json integer_to_json(const intlin::Integer &x) {
  if (x.fits_slong_p())
    return x.get_si();
  return x.get_str();
}

intlin::Integer integer_from_json(const json &j) {
  if (j.is_number_unsigned())
    return intlin::Integer(j.get<unsigned long>());
  if (j.is_number_integer())
    return intlin::Integer(j.get<long>());
  if (j.is_string()) {
    intlin::Integer x;
    if (x.set_str(j.get<std::string>(), 10) == 0)
      return x;
  }
  parse_error("expected an integer, got " + j.dump());
}

json vector_to_json(const IntegerVector &v) {
  json arr = json::array();
  for (const auto &x : v)
    arr.push_back(integer_to_json(x));
  return arr;
}

IntegerVector vector_from_json(const json &j) {
  if (!j.is_array())
    parse_error("expected an integer array, got " + j.dump());
  IntegerVector v;
  for (const auto &x : j)
    v.push_back(integer_from_json(x));
  return v;
}

json points_to_json(const std::vector<IntegerVector> &pts) {
  json arr = json::array();
  for (const auto &p : pts)
    arr.push_back(vector_to_json(p));
  return arr;
}

json semigroup_to_json(const AffineSemigroup &s, std::string_view name) {
  json j{{"dim", s.dim()}, {"generators", points_to_json(s.generators())}};
  if (!name.empty())
    j["name"] = std::string(name);
  return j;
}

namespace {

json indices_to_json(const saturation::IndexSet &idx) { return json(idx); }

saturation::IndexSet indices_from_json(const json &j) {
  if (!j.is_array())
    parse_error("expected an index array, got " + j.dump());
  saturation::IndexSet out;
  for (const auto &x : j) {
    if (!x.is_number_unsigned())
      parse_error("generator index must be a nonnegative integer, got " + x.dump());
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

const json &field(const json &j, const char *key) {
  if (!j.is_object() || !j.contains(key))
    parse_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

} // namespace

json certificate_to_json(const MembershipVerdict &v) {
  if (const auto *c = std::get_if<MemberCertificate>(&v.certificate)) {
    if (c->kind == MemberCertificate::Kind::DominatedSpan)
      return {{"kind", "dominated_span"}, {"coefficients", vector_to_json(c->coefficients)}};
    json subsets = json::array();
    for (const auto &rec : c->subsets)
      subsets.push_back({{"subset", indices_to_json(rec.subset)},
                         {"coefficients", vector_to_json(rec.coefficients)}});
    return {{"kind", "maximal_subsets"}, {"subsets", subsets}};
  }
  const auto &w = std::get<NonMemberWitness>(v.certificate);
  json chi = json::array();
  for (const auto &x : w.character.w)
    chi.push_back(x.get_str());
  return {{"kind", "witness"},
          {"subset", indices_to_json(w.subset)},
          {"support_vector", vector_to_json(w.support)},
          {"character", chi}};
}

json verdict_to_json(const MembershipVerdict &v, bool with_certificate) {
  json j{{"point", vector_to_json(v.point)}, {"member", v.member}};
  if (with_certificate)
    j["certificate"] = certificate_to_json(v);
  return j;
}

MembershipVerdict verdict_from_json(const json &j) {
  MembershipVerdict v;
  v.point = vector_from_json(field(j, "point"));
  const json &member = field(j, "member");
  if (!member.is_boolean())
    parse_error("\"member\" must be a boolean");
  v.member = member.get<bool>();
  const json &cert = field(j, "certificate");
  const json &kind = field(cert, "kind");
  if (kind == "dominated_span") {
    MemberCertificate c;
    c.coefficients = vector_from_json(field(cert, "coefficients"));
    v.certificate = std::move(c);
  } else if (kind == "maximal_subsets") {
    MemberCertificate c;
    c.kind = MemberCertificate::Kind::MaximalSubsets;
    const json &subs = field(cert, "subsets");
    if (!subs.is_array())
      parse_error("\"subsets\" must be an array");
    for (const auto &rec : subs)
      c.subsets.push_back({indices_from_json(field(rec, "subset")),
                           vector_from_json(field(rec, "coefficients"))});
    v.certificate = std::move(c);
  } else if (kind == "witness") {
    NonMemberWitness w;
    w.subset = indices_from_json(field(cert, "subset"));
    w.support = vector_from_json(field(cert, "support_vector"));
    const json &chi = field(cert, "character");
    if (!chi.is_array())
      parse_error("\"character\" must be an array of rationals");
    for (const auto &x : chi) {
      if (!x.is_string() && !x.is_number_integer())
        parse_error("character entry must be a rational string, got " + x.dump());
      intlin::Rational r;
      const std::string s = x.is_string() ? x.get<std::string>() : std::to_string(x.get<long>());
      if (r.set_str(s, 10) != 0 || sgn(r.get_den()) == 0)
        parse_error("invalid rational '" + s + "'");
      r.canonicalize();
      w.character.w.push_back(r);
    }
    v.certificate = std::move(w);
  } else {
    parse_error("unknown certificate kind " + kind.dump());
  }
  return v;
}

VerifySummary verify_report(const json &report) {
  const json &input = field(report, "input");
  std::vector<IntegerVector> gens;
  const json &gj = field(input, "generators");
  if (!gj.is_array())
    parse_error("\"input.generators\" must be an array");
  for (const auto &g : gj)
    gens.push_back(vector_from_json(g));
  const json &dim = field(input, "dim");
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0)
    parse_error("\"input.dim\" must be a positive integer");
  AffineSemigroup s = [&] {
    try {
      return AffineSemigroup(dim.get<std::size_t>(), gens);
    } catch (const Error &e) {
      parse_error(std::string("invalid input semigroup: ") + e.what());
    }
  }();
  if (s.size() != gens.size())
    parse_error("input semigroup lists duplicate generators");

  VerifySummary summary;
  const json &results = field(report, "results");
  if (!results.contains("verdicts"))
    return summary;
  const json &verdicts = results.at("verdicts");
  if (!verdicts.is_array())
    parse_error("\"results.verdicts\" must be an array");
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    if (!verdicts[i].is_object() || !verdicts[i].contains("certificate"))
      continue;
    auto v = verdict_from_json(verdicts[i]);
    ++summary.checked;
    if (!saturation::verify_certificate(s, v.point, v))
      summary.failed.push_back(i);
  }
  return summary;
}

std::string render_plot_svg(const AffineSemigroup &s, const Box &box, unsigned jobs) {
  if (s.dim() != 2)
    throw Error(ErrorKind::InvalidArgument, "plots are only available in dimension 2");
  if (box.dim() != 2)
    throw Error(ErrorKind::DimensionMismatch, "plot box must be two-dimensional");

  const auto in_gamma = semigroup::reachable(s.generators(), box);
  const auto closure = saturation::campillo_closure(s, box);
  std::vector<char> in_closure(box.size(), 0);
  for (const auto &p : closure.members)
    in_closure[box.index_of(p)] = 1;
  const auto in_sat = saturation::MembershipEngine(s).sweep(box, jobs);

  const long nx = box.extent()[0], ny = box.extent()[1];
  constexpr long cell = 32, margin = 40, legend = 150;
  const long width = margin * 2 + (nx - 1) * cell + legend;
  const long height = margin * 2 + (ny - 1) * cell;
  auto px = [&](long x) { return margin + x * cell; };
  auto py = [&](long y) { return height - margin - y * cell; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<style>\n"
      << ".gamma{fill:#000000}\n"
      << ".campillo{fill:#1f5fd1}\n"
      << ".lipschitz{fill:#d12a1f}\n"
      << ".outside{fill:none;stroke:#9a9a9a;stroke-width:1}\n"
      << ".axis{stroke:#000000;stroke-width:1.5}\n"
      << "text{font-family:sans-serif;font-size:12px}\n"
      << "</style>\n";
  svg << "<line class=\"axis\" x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\""
      << px(nx - 1) + cell / 2 << "\" y2=\"" << py(0) << "\"/>\n";
  svg << "<line class=\"axis\" x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0)
      << "\" y2=\"" << py(ny - 1) - cell / 2 << "\"/>\n";
  for (long x = 0; x < nx; ++x)
    svg << "<text x=\"" << px(x) - 4 << "\" y=\"" << py(0) + 20 << "\">" << x << "</text>\n";
  for (long y = 0; y < ny; ++y)
    svg << "<text x=\"" << px(0) - 24 << "\" y=\"" << py(y) + 4 << "\">" << y << "</text>\n";

  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto c = box.coords(i);
    const char *cls = in_gamma[i] ? "gamma"
                      : in_closure[i] ? "campillo"
                      : in_sat[i]     ? "lipschitz"
                                      : "outside";
    svg << "<circle class=\"" << cls << "\" data-point=\"" << c[0] << ',' << c[1] << "\" cx=\""
        << px(c[0]) << "\" cy=\"" << py(c[1]) << "\" r=\"5\"/>\n";
  }

  const long lx = width - legend + 10;
  const char *labels[][2] = {{"gamma", "semigroup"},
                             {"campillo", "Campillo closure"},
                             {"lipschitz", "Lipschitz only"},
                             {"outside", "not saturated"}};
  for (int k = 0; k < 4; ++k) {
    const long ly = margin + 20 * k;
    svg << "<rect class=\"" << labels[k][0] << "\" x=\"" << lx - 5 << "\" y=\"" << ly - 5
        << "\" width=\"10\" height=\"10\"/>\n"
        << "<text x=\"" << lx + 12 << "\" y=\"" << ly + 4 << "\">" << labels[k][1] << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

} // namespace lipsat::io
