// lipsat command-line front end. Talks to the library only through the C API.

#include <lipsat/lipsat.h>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInputError = 2 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string file;
  std::string point;
  std::string box;
  bool witness = false;
  unsigned jobs = 1;
  std::string out;
  std::string format = "json";
  std::vector<std::string> argv;
};

struct SemigroupDeleter {
  void operator()(lipsat_semigroup *s) const { lipsat_semigroup_destroy(s); }
};
using Handle = std::unique_ptr<lipsat_semigroup, SemigroupDeleter>;

// Owns a char* handed out by the library.
struct Text {
  char *p = nullptr;
  ~Text() { lipsat_string_free(p); }
  std::string str() const { return p ? p : ""; }
  json parse() const { return json::parse(str()); }
};

std::shared_ptr<spdlog::logger> logger;

// Errors always reach stderr; LIPSAT_LOG only gates warnings and progress.
void report_error(const std::string &msg) { std::cerr << "lipsat: error: " << msg << "\n"; }

void setup_logging() {
  logger = spdlog::stderr_color_st("lipsat");
  logger->set_pattern("lipsat: %l: %v");
  logger->set_level(spdlog::level::warn);
  if (const char *env = std::getenv("LIPSAT_LOG")) {
    std::string v = env;
    if (v == "off")
      logger->set_level(spdlog::level::off);
    else if (v == "info")
      logger->set_level(spdlog::level::info);
    else if (v == "debug")
      logger->set_level(spdlog::level::debug);
  }
}

void check(lipsat_status st) {
  if (st != LIPSAT_OK)
    throw InputError(std::string(lipsat_status_string(st)) + ": " + lipsat_last_error());
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string &data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  static const char *hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::vector<int64_t> parse_list(const std::string &text, const char *what) {
  std::vector<int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos)
      end = text.size();
    std::string tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ')
      tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ')
      tok.pop_back();
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw InputError(std::string("malformed ") + what + " '" + text + "'");
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

struct Loaded {
  Handle handle;
  json input;
};

Loaded load(const std::string &path) {
  const std::string raw = read_file(path);
  lipsat_semigroup *s = nullptr;
  check(lipsat_semigroup_parse(raw.data(), raw.size(), &s));
  Handle h(s);
  Text t;
  check(lipsat_semigroup_to_json(s, &t.p));
  json input = t.parse();
  input["path"] = path;
  input["sha256"] = sha256_hex(raw);
  logger->info("loaded {} generators in dimension {} from {}", lipsat_semigroup_count(s),
            lipsat_semigroup_dim(s), path);
  return {std::move(h), std::move(input)};
}

void require_smooth(const lipsat_semigroup *s) {
  int smooth = 0;
  Text diag;
  check(lipsat_check_smooth(s, &smooth, &diag.p));
  if (!smooth)
    throw InputError("normalization is not smooth: " + diag.parse().at("message").get<std::string>());
}

// Returns the box override, warning when it does not contain the default bound box.
std::optional<std::vector<int64_t>> box_override(const Options &o, const lipsat_semigroup *s) {
  if (o.box.empty())
    return std::nullopt;
  auto box = parse_list(o.box, "box");
  const std::size_t d = lipsat_semigroup_dim(s);
  if (box.size() != d)
    throw InputError("box has " + std::to_string(box.size()) + " entries, expected " +
                     std::to_string(d));
  std::vector<int64_t> bound(d);
  check(lipsat_bounds(s, nullptr, nullptr, bound.data()));
  for (std::size_t k = 0; k < d; ++k)
    if (box[k] < bound[k]) {
      logger->warn("box {} does not contain the default bound box; generators outside it may be missed",
                o.box);
      break;
    }
  return box;
}

std::string point_text(const json &p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k)
      s += ",";
    s += p[k].is_string() ? p[k].get<std::string>() : p[k].dump();
  }
  return s + ")";
}

void emit(const Options &o, const std::string &body) {
  if (o.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f)
    throw InputError("cannot write " + o.out);
  f << body;
}

std::string points_text(const json &pts) {
  std::string s;
  for (const auto &p : pts)
    s += point_text(p) + "\n";
  return s;
}

struct Outcome {
  int code = kOk;
  json results;
  std::string text;
};

Outcome run_check(const Options &o, const lipsat_semigroup *s) {
  if (o.point.empty())
    throw InputError("check needs --point");
  auto point = parse_list(o.point, "point");
  int member = 0;
  Text verdict;
  check(lipsat_check(s, point.data(), point.size(), &member, &verdict.p));
  json v = verdict.parse();
  if (!member && !o.witness)
    v.erase("certificate");
  Outcome r;
  r.code = member ? kOk : kNegative;
  r.results = {{"verdicts", json::array({v})}};
  r.text = point_text(v["point"]) + (member ? " is a member\n" : " is not a member\n");
  return r;
}

Outcome run_saturate(const Options &o, const lipsat_semigroup *s) {
  auto box = box_override(o, s);
  Text t;
  check(lipsat_saturate(s, box ? box->data() : nullptr, o.jobs, 1, &t.p));
  Outcome r;
  r.results = t.parse();
  r.text = "bound box " + point_text(r.results["bound_box"]["bound"]) + "\n" +
           std::to_string(r.results["members"].size()) + " members in box " +
           point_text(r.results["box"]) + "\ngenerators:\n" + points_text(r.results["generators"]);
  return r;
}

Outcome run_campillo(const Options &o, const lipsat_semigroup *s) {
  auto box = box_override(o, s);
  Text t;
  check(lipsat_campillo(s, box ? box->data() : nullptr, &t.p));
  Outcome r;
  r.results = t.parse();
  r.text = std::to_string(r.results["members"].size()) + " members in box " +
           point_text(r.results["box"]) + " after " + r.results["iterations"].dump() +
           " iterations\n" + points_text(r.results["members"]);
  return r;
}

Outcome run_diff(const Options &o, const lipsat_semigroup *s) {
  auto box = box_override(o, s);
  Text t;
  check(lipsat_diff(s, box ? box->data() : nullptr, o.jobs, 1, &t.p));
  Outcome r;
  r.results = t.parse();
  r.text = points_text(r.results["points"]);
  return r;
}

Outcome run_info(const lipsat_semigroup *s, const json &input) {
  int smooth = 0;
  Text diag;
  check(lipsat_check_smooth(s, &smooth, &diag.p));
  Outcome r;
  r.results = {{"smoothness", diag.parse()}};
  r.text = "dimension " + input["dim"].dump() + ", " + std::to_string(input["generators"].size()) +
           " generators\n" + r.results["smoothness"]["message"].get<std::string>() + "\n";
  if (smooth) {
    const std::size_t d = lipsat_semigroup_dim(s);
    std::vector<int64_t> b(d), c(d), bound(d);
    check(lipsat_bounds(s, b.data(), c.data(), bound.data()));
    r.results["bound_box"] = {{"b", b}, {"c", c}, {"bound", bound}};
    r.text += "bound box " + point_text(json(bound)) + "\n";
  }
  return r;
}

int run_verify(const Options &o) {
  std::string raw;
  try {
    raw = read_file(o.file);
  } catch (const InputError &e) {
    report_error(e.what());
    return kInputError;
  }
  int ok = 0;
  Text details;
  lipsat_status st = lipsat_verify_report(raw.data(), raw.size(), &ok, &details.p);
  if (st != LIPSAT_OK) {
    report_error(std::string(lipsat_status_string(st)) + ": " + lipsat_last_error());
    return kInputError;
  }
  json d = details.parse();
  if (o.format == "text")
    std::cout << d["checked"].dump() << " certificates checked, " << d["failed"].size()
              << " failed\n";
  else
    std::cout << d.dump(2) << "\n";
  for (const auto &i : d["failed"])
    report_error("certificate of verdict " + i.dump() + " does not verify");
  return ok ? kOk : kNegative;
}

int run(const Options &o) {
  if (o.command == "verify")
    return run_verify(o);

  const auto start = std::chrono::steady_clock::now();
  Loaded in = load(o.file);
  const lipsat_semigroup *s = in.handle.get();

  if (o.command == "plot") {
    auto box = box_override(o, s);
    Text svg;
    check(lipsat_plot_svg(s, box ? box->data() : nullptr, o.jobs, &svg.p));
    emit(o, svg.str());
    return kOk;
  }

  Outcome r;
  if (o.command == "info") {
    r = run_info(s, in.input);
  } else {
    require_smooth(s);
    if (o.command == "check")
      r = run_check(o, s);
    else if (o.command == "saturate")
      r = run_saturate(o, s);
    else if (o.command == "campillo")
      r = run_campillo(o, s);
    else
      r = run_diff(o, s);
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  logger->info("{} finished in {:.1f} ms", o.command, ms);

  if (o.format == "text") {
    emit(o, r.text);
  } else {
    json report{{"tool", "lipsat"},
                {"version", lipsat_version()},
                {"command", o.command},
                {"argv", o.argv},
                {"input", in.input},
                {"results", r.results},
                {"timing_ms", ms}};
    emit(o, report.dump(2) + "\n");
  }
  return r.code;
}

} // namespace

int main(int argc, char **argv) {
  setup_logging();
  Options o;
  o.argv.assign(argv, argv + argc);

  CLI::App app{"Lipschitz saturation of affine semigroups with smooth normalization"};
  app.set_version_flag("--version", std::string(lipsat_version()));
  app.require_subcommand(1);

  struct Command {
    const char *name, *help;
    bool point, box, witness, jobs;
  };
  const Command commands[] = {
      {"check", "decide membership of --point in the Lipschitz saturation", true, false, true, false},
      {"saturate", "members and generators of the saturation inside the bound box", false, true,
       false, true},
      {"campillo", "Campillo closure inside the box", false, true, false, false},
      {"diff", "saturation points missing from the Campillo closure", false, true, false, true},
      {"verify", "re-check every certificate embedded in a report", false, false, false, false},
      {"plot", "SVG plot of a planar semigroup", false, true, false, true},
      {"info", "smoothness diagnostics and bound box", false, false, false, false},
  };
  for (const auto &sp : commands) {
    auto *sub = app.add_subcommand(sp.name, sp.help);
    sub->add_option("FILE", o.file, sp.name == std::string("verify") ? "report file" : "semigroup file")
        ->required();
    if (sp.point)
      sub->add_option("--point", o.point, "comma separated coordinates");
    if (sp.box)
      sub->add_option("--box", o.box, "comma separated box bound (exclusive)");
    if (sp.witness)
      sub->add_flag("--witness", o.witness, "attach the non-membership witness");
    if (sp.jobs)
      sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--out", o.out, "write output to PATH");
    sub->add_option("--format", o.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->callback([&o, sub] { o.command = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    return run(o);
  } catch (const InputError &e) {
    report_error(e.what());
    return kInputError;
  } catch (const json::exception &e) {
    report_error(std::string("malformed library output: ") + e.what());
    return kInputError;
  } catch (const std::exception &e) {
    report_error(e.what());
    return kInputError;
  }
}
