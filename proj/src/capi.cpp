#include "lipsat/lipsat.h"

#include "lipsat/error.hpp"
#include "lipsat/io.hpp"
#include "lipsat/saturation.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

using nlohmann::json;
using namespace lipsat;

struct lipsat_semigroup {
  std::string name;
  semigroup::AffineSemigroup value;
};

namespace {

thread_local std::string last_error;

lipsat_status fail(lipsat_status st, const std::string &msg) {
  last_error = msg;
  return st;
}

lipsat_status map_kind(ErrorKind k) {
  switch (k) {
  case ErrorKind::DimensionMismatch:
    return LIPSAT_ERROR_DIMENSION;
  case ErrorKind::InvalidArgument:
    return LIPSAT_ERROR_INVALID_ARGUMENT;
  case ErrorKind::NotSmooth:
    return LIPSAT_ERROR_NOT_SMOOTH;
  case ErrorKind::Parse:
    return LIPSAT_ERROR_PARSE;
  }
  return LIPSAT_ERROR_INTERNAL;
}

template <class F> lipsat_status guarded(F &&body) {
  last_error.clear();
  try {
    body();
    return LIPSAT_OK;
  } catch (const Error &e) {
    return fail(map_kind(e.kind()), e.what());
  } catch (const std::bad_alloc &) {
    return fail(LIPSAT_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(LIPSAT_ERROR_INTERNAL, e.what());
  }
}

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool cond, const char *what) {
  if (!cond)
    throw Error(ErrorKind::InvalidArgument, what);
}

intlin::IntegerVector read_vector(const int64_t *data, std::size_t n) {
  return intlin::make_vector(std::span<const std::int64_t>(data, n));
}

std::optional<semigroup::Box> read_box(const lipsat_semigroup *s, const int64_t *box) {
  if (!box)
    return std::nullopt;
  return semigroup::Box(read_vector(box, s->value.dim()));
}

void store(const intlin::IntegerVector &v, int64_t *out) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].fits_slong_p())
      throw Error(ErrorKind::InvalidArgument, "value does not fit in 64 bits");
    out[k] = v[k].get_si();
  }
}

json bound_box_json(const semigroup::Bounds &b) {
  return {{"b", io::vector_to_json(b.b)},
          {"c", io::vector_to_json(b.c)},
          {"bound", io::vector_to_json(b.box.bound())}};
}

} // namespace

extern "C" {

const char *lipsat_version(void) { return "0.1.0"; }

const char *lipsat_status_string(lipsat_status status) {
  switch (status) {
  case LIPSAT_OK:
    return "ok";
  case LIPSAT_ERROR_INVALID_ARGUMENT:
    return "invalid argument";
  case LIPSAT_ERROR_DIMENSION:
    return "dimension mismatch";
  case LIPSAT_ERROR_NOT_SMOOTH:
    return "normalization is not smooth";
  case LIPSAT_ERROR_PARSE:
    return "parse error";
  case LIPSAT_ERROR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

const char *lipsat_last_error(void) { return last_error.c_str(); }

void lipsat_string_free(char *s) { std::free(s); }

lipsat_status lipsat_semigroup_create(size_t dim, const int64_t *entries, size_t count,
                                      lipsat_semigroup **out) {
  return guarded([&] {
    require(out != nullptr, "output handle pointer is null");
    require(entries != nullptr || count == 0, "generator array is null");
    std::vector<intlin::IntegerVector> gens;
    for (std::size_t i = 0; i < count; ++i)
      gens.push_back(read_vector(entries + i * dim, dim));
    *out = new lipsat_semigroup{{}, semigroup::AffineSemigroup(dim, std::move(gens))};
  });
}

lipsat_status lipsat_semigroup_parse(const char *text, size_t length, lipsat_semigroup **out) {
  return guarded([&] {
    require(out != nullptr, "output handle pointer is null");
    require(text != nullptr, "input text is null");
    auto file = io::parse_semigroup(std::string_view(text, length));
    *out = new lipsat_semigroup{std::move(file.name), std::move(file.semigroup)};
  });
}

void lipsat_semigroup_destroy(lipsat_semigroup *s) { delete s; }

size_t lipsat_semigroup_dim(const lipsat_semigroup *s) { return s ? s->value.dim() : 0; }

size_t lipsat_semigroup_count(const lipsat_semigroup *s) { return s ? s->value.size() : 0; }

const char *lipsat_semigroup_name(const lipsat_semigroup *s) { return s ? s->name.c_str() : ""; }

lipsat_status lipsat_semigroup_to_json(const lipsat_semigroup *s, char **out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = dup_string(io::semigroup_to_json(s->value, s->name).dump());
  });
}

lipsat_status lipsat_check_smooth(const lipsat_semigroup *s, int *smooth, char **diagnostics) {
  return guarded([&] {
    require(s && smooth, "null argument");
    auto d = semigroup::check_smooth(s->value);
    *smooth = d.smooth ? 1 : 0;
    if (diagnostics) {
      json j{{"smooth", d.smooth},
             {"empty_axes", d.empty_axes},
             {"group_index", io::integer_to_json(d.group_index)},
             {"message", d.message}};
      *diagnostics = dup_string(j.dump());
    }
  });
}

lipsat_status lipsat_bounds(const lipsat_semigroup *s, int64_t *b, int64_t *c, int64_t *box) {
  return guarded([&] {
    require(s != nullptr, "null semigroup");
    auto bd = semigroup::bounds(s->value);
    if (b)
      store(bd.b, b);
    if (c)
      store(bd.c, c);
    if (box)
      store(bd.box.bound(), box);
  });
}

lipsat_status lipsat_check(const lipsat_semigroup *s, const int64_t *point, size_t dim, int *member,
                           char **verdict) {
  return guarded([&] {
    require(s && point && member, "null argument");
    if (dim != s->value.dim())
      throw Error(ErrorKind::DimensionMismatch, "point has " + std::to_string(dim) +
                                                    " coordinates, expected " +
                                                    std::to_string(s->value.dim()));
    auto v = saturation::gamma_s_contains(s->value, read_vector(point, dim));
    *member = v.member ? 1 : 0;
    if (verdict)
      *verdict = dup_string(io::verdict_to_json(v).dump());
  });
}

lipsat_status lipsat_saturate(const lipsat_semigroup *s, const int64_t *box, unsigned jobs,
                              int with_certificates, char **result) {
  return guarded([&] {
    require(s && result, "null argument");
    auto bd = semigroup::bounds(s->value);
    auto r = saturation::lipschitz_generators(s->value, read_box(s, box), jobs);
    json j{{"bound_box", bound_box_json(bd)},
           {"box", io::vector_to_json(r.box.bound())},
           {"members", io::points_to_json(r.members)},
           {"generators", io::points_to_json(r.generators)}};
    if (with_certificates) {
      saturation::MembershipEngine engine(s->value);
      json verdicts = json::array();
      for (std::size_t i = 0; i < r.box.size(); ++i)
        verdicts.push_back(io::verdict_to_json(engine.contains(r.box.point(i))));
      j["verdicts"] = std::move(verdicts);
    }
    *result = dup_string(j.dump());
  });
}

lipsat_status lipsat_campillo(const lipsat_semigroup *s, const int64_t *box, char **result) {
  return guarded([&] {
    require(s && result, "null argument");
    auto b = read_box(s, box).value_or(semigroup::bounds(s->value).box);
    auto r = saturation::campillo_closure(s->value, b);
    json j{{"box", io::vector_to_json(r.box.bound())},
           {"members", io::points_to_json(r.members)},
           {"iterations", r.iterations}};
    *result = dup_string(j.dump());
  });
}

lipsat_status lipsat_diff(const lipsat_semigroup *s, const int64_t *box, unsigned jobs,
                          int with_certificates, char **result) {
  return guarded([&] {
    require(s && result, "null argument");
    auto b = read_box(s, box).value_or(semigroup::bounds(s->value).box);
    auto pts = saturation::diff_campillo(s->value, b, jobs);
    json j{{"box", io::vector_to_json(b.bound())}, {"points", io::points_to_json(pts)}};
    if (with_certificates) {
      saturation::MembershipEngine engine(s->value);
      json verdicts = json::array();
      for (const auto &p : pts)
        verdicts.push_back(io::verdict_to_json(engine.contains(p)));
      j["verdicts"] = std::move(verdicts);
    }
    *result = dup_string(j.dump());
  });
}

lipsat_status lipsat_plot_svg(const lipsat_semigroup *s, const int64_t *box, unsigned jobs,
                              char **svg) {
  return guarded([&] {
    require(s && svg, "null argument");
    if (s->value.dim() != 2)
      throw Error(ErrorKind::DimensionMismatch, "plots need a semigroup of dimension 2, got " +
                                                    std::to_string(s->value.dim()));
    auto b = read_box(s, box).value_or(semigroup::bounds(s->value).box);
    *svg = dup_string(io::render_plot_svg(s->value, b, jobs));
  });
}

lipsat_status lipsat_verify_report(const char *report, size_t length, int *all_valid,
                                   char **details) {
  return guarded([&] {
    require(report && all_valid, "null argument");
    json doc;
    try {
      doc = json::parse(std::string_view(report, length));
    } catch (const json::exception &e) {
      throw Error(ErrorKind::Parse, std::string("report is not valid JSON: ") + e.what());
    }
    auto summary = io::verify_report(doc);
    *all_valid = summary.failed.empty() ? 1 : 0;
    if (details)
      *details = dup_string(json{{"checked", summary.checked}, {"failed", summary.failed}}.dump());
  });
}

} // extern "C"
