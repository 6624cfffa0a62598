#include "gnmetric_cli/config.hpp"

#include <fstream>

#include <json.hpp>

namespace gnmetric::cli {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw validation_error(path + ": " + msg);
}

const json& require_field(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "required field is missing");
  return *it;
}

const json* optional_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::size_t as_count(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    fail(path, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

Point parse_point(const json& v, const Space& space, const std::string& path) {
  if (space.kind() == Space::Kind::finite_table) {
    if (!v.is_number_integer() && !v.is_number_unsigned())
      fail(path, "expected a point index for a finite space");
    if (v.is_number_integer() && v.get<long long>() < 0) fail(path, "point index is negative");
    const Point p = Point::index(v.get<std::size_t>());
    if (!space.contains(p))
      fail(path, "point index " + std::to_string(p.as_index()) +
                     " is outside the space (size " + std::to_string(space.size()) + ")");
    return p;
  }
  if (space.dim() == 1) {
    if (!v.is_number()) fail(path, "expected a number (1-d real point)");
    return Point::scalar(v.get<double>());  // JSON numbers are always finite
  }
  if (!v.is_array() || v.size() != space.dim())
    fail(path, "expected an array of " + std::to_string(space.dim()) + " coordinates");
  std::vector<double> coords;
  coords.reserve(v.size());
  for (const auto& c : v) coords.push_back(as_double(c, path));
  return Point::real(std::move(coords));
}

std::vector<Point> parse_point_list(const json& v, const Space& space, const std::string& path) {
  if (!v.is_array()) fail(path, "expected a list of points");
  std::vector<Point> pts;
  pts.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    pts.push_back(parse_point(v[i], space, path + "[" + std::to_string(i) + "]"));
  return pts;
}

json load_json_file(const std::filesystem::path& file, const std::string& path) {
  std::ifstream in(file);
  if (!in) fail(path, "cannot open file: " + file.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    fail(path, "parse error in " + file.string() + ": " + e.what());
  }
  return doc;
}

Space parse_space(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  const std::string kind = as_string(require_field(v, path, "kind"), path + ".kind");
  if (kind == "finite_table") {
    const json& base = require_field(v, path, "base");
    if (!base.is_array()) fail(path + ".base", "expected a matrix (list of rows)");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < base.size(); ++i) {
      const auto& r = base[i];
      const std::string rp = path + ".base[" + std::to_string(i) + "]";
      if (!r.is_array()) fail(rp, "expected a row of numbers");
      std::vector<double> row;
      for (std::size_t j = 0; j < r.size(); ++j)
        row.push_back(as_double(r[j], rp + "[" + std::to_string(j) + "]"));
      rows.push_back(std::move(row));
    }
    try {
      return Space::finite_table(rows);
    } catch (const validation_error& e) {
      fail(path, e.what());
    }
  }
  if (kind == "real_vector") {
    const std::size_t dim = as_count(require_field(v, path, "dim"), path + ".dim");
    const std::string norm =
        as_string(require_field(v, path, "base_norm"), path + ".base_norm");
    try {
      return Space::real_vector(dim, base_norm_from_string(norm));
    } catch (const validation_error& e) {
      fail(path, e.what());
    }
  }
  fail(path + ".kind", "expected \"finite_table\" or \"real_vector\"");
}

GnMetric parse_metric(const json& v, Space space, const std::filesystem::path& base_dir,
                      const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  const std::string kind_s = as_string(require_field(v, path, "kind"), path + ".kind");
  MetricKind kind;
  try {
    kind = metric_kind_from_string(kind_s);
  } catch (const validation_error& e) {
    fail(path + ".kind", e.what());
  }
  const json& arity_v = require_field(v, path, "arity");
  const std::size_t arity = as_count(arity_v, path + ".arity");
  if (arity < 3) fail(path + ".arity", "arity >= 3 required, got " + std::to_string(arity));

  std::vector<double> values;
  if (kind == MetricKind::explicit_table) {
    const json* inline_values = optional_field(v, "values");
    const json* table_path = optional_field(v, "table");
    if (inline_values && table_path)
      fail(path, "give either inline \"values\" or a \"table\" file, not both");
    if (inline_values) {
      if (!inline_values->is_array()) fail(path + ".values", "expected a flat list of numbers");
      for (std::size_t i = 0; i < inline_values->size(); ++i)
        values.push_back(
            as_double((*inline_values)[i], path + ".values[" + std::to_string(i) + "]"));
    } else if (table_path) {
      const std::filesystem::path file =
          base_dir / std::filesystem::path(as_string(*table_path, path + ".table"));
      const json doc = load_json_file(file, path + ".table");
      const json& vals = require_field(doc, path + ".table:" + file.string(), "values");
      if (!vals.is_array()) fail(path + ".table", "file must hold a \"values\" list");
      for (const auto& x : vals) values.push_back(as_double(x, path + ".table values"));
      if (const json* a = optional_field(doc, "arity"); a && as_count(*a, path) != arity)
        fail(path + ".table", "table file arity disagrees with the config");
    } else {
      fail(path, "explicit_table metrics need \"values\" or a \"table\" file");
    }
  }
  try {
    return GnMetric::make(kind, std::move(space), arity, std::move(values));
  } catch (const validation_error& e) {
    fail(path, e.what());
  }
}

SelfMap parse_map(const json& v, const Space& space, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  const std::string kind = as_string(require_field(v, path, "kind"), path + ".kind");
  SelfMap map = [&]() -> SelfMap {
    try {
      if (kind == "affine") {
        const json& a = require_field(v, path, "scale");
        const json& b = require_field(v, path, "offset");
        std::vector<double> scale, offset;
        if (a.is_array())
          for (const auto& x : a) scale.push_back(as_double(x, path + ".scale"));
        else
          scale.push_back(as_double(a, path + ".scale"));
        if (b.is_array())
          for (const auto& x : b) offset.push_back(as_double(x, path + ".offset"));
        else
          offset.push_back(as_double(b, path + ".offset"));
        return SelfMap::affine(std::move(scale), std::move(offset));
      }
      if (kind == "finite") {
        const json& img = require_field(v, path, "image");
        if (!img.is_array()) fail(path + ".image", "expected a list of point indices");
        std::vector<std::size_t> image;
        for (std::size_t i = 0; i < img.size(); ++i)
          image.push_back(as_count(img[i], path + ".image[" + std::to_string(i) + "]"));
        if (space.kind() != Space::Kind::finite_table || image.size() != space.size())
          fail(path + ".image", "image must list one value per point of the finite space");
        return SelfMap::finite(std::move(image));
      }
      if (kind == "identity") return SelfMap::identity();
    } catch (const validation_error& e) {
      fail(path, e.what());
    }
    fail(path + ".kind", "expected \"affine\", \"finite\" or \"identity\"");
  }();

  if (const json* pre = optional_field(v, "preimage")) {
    double res_tol = 1e-9;
    if (const json* t = optional_field(v, "residual_tol"))
      res_tol = as_double(*t, path + ".residual_tol");
    map = map.with_preimage(parse_map(*pre, space, path + ".preimage"), res_tol);
  }
  return map;
}

SequencePrefix parse_sequence(const json& v, const Space& space,
                              const std::filesystem::path& base_dir, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  const json* points = optional_field(v, "points");
  const json* file = optional_field(v, "file");
  if (points && file) fail(path, "give either inline \"points\" or a \"file\", not both");
  json owned;
  if (file) {
    const std::filesystem::path f =
        base_dir / std::filesystem::path(as_string(*file, path + ".file"));
    owned = load_json_file(f, path + ".file");
    points = optional_field(owned, "points");
    if (!points) fail(path + ".file", "sequence file must hold a \"points\" list");
  }
  if (!points) fail(path, "sequence needs \"points\" or a \"file\"");
  SequencePrefix s{parse_point_list(*points, space, path + ".points")};
  if (s.points.size() < 2) fail(path + ".points", "sequence prefix needs at least 2 points");
  return s;
}

}  // namespace

const GnMetric& RunConfig::require_metric() const {
  if (!metric) throw validation_error("config has no metric section");
  return *metric;
}

const SelfMap& RunConfig::require_map(const std::string& name) const {
  auto it = maps.find(name);
  if (it == maps.end()) throw validation_error("maps." + name + ": no such map in the config");
  return it->second;
}

const SequencePrefix& RunConfig::require_sequence(const std::string& name) const {
  auto it = sequences.find(name);
  if (it == sequences.end())
    throw validation_error("sequences." + name + ": no such sequence in the config");
  return it->second;
}

RunConfig load_config(const std::filesystem::path& path) {
  const json doc = load_json_file(path, "config");
  if (!doc.is_object()) fail("config", "top level must be an object");
  const std::filesystem::path base_dir = path.has_parent_path() ? path.parent_path() : ".";

  RunConfig cfg;

  const Space space = parse_space(require_field(doc, "config", "space"), "space");
  cfg.metric = parse_metric(require_field(doc, "config", "metric"), space, base_dir, "metric");

  if (const json* plan = optional_field(doc, "plan")) {
    if (!plan->is_object()) fail("plan", "expected an object");
    const std::string mode = as_string(require_field(*plan, "plan", "mode"), "plan.mode");
    if (mode == "exhaustive") {
      cfg.plan.mode = SamplePlan::Mode::exhaustive;
      if (const json* s = optional_field(*plan, "seed"))
        cfg.plan.seed = as_count(*s, "plan.seed");
    } else if (mode == "random") {
      cfg.plan.mode = SamplePlan::Mode::random;
      cfg.plan.seed = as_count(require_field(*plan, "plan", "seed"), "plan.seed");
      cfg.plan.tuple_count =
          as_count(require_field(*plan, "plan", "tuple_count"), "plan.tuple_count");
      if (cfg.plan.tuple_count == 0) fail("plan.tuple_count", "must be >= 1");
    } else {
      fail("plan.mode", "expected \"exhaustive\" or \"random\"");
    }
    if (const json* pool = optional_field(*plan, "point_pool"))
      cfg.plan.point_pool = parse_point_list(*pool, space, "plan.point_pool");
    if (space.kind() == Space::Kind::real_vector && !cfg.plan.point_pool)
      fail("plan.point_pool", "required for real_vector spaces");
  }

  if (const json* radii = optional_field(doc, "radii")) {
    if (!radii->is_array()) fail("radii", "expected a list of positive numbers");
    for (std::size_t i = 0; i < radii->size(); ++i) {
      const double r = as_double((*radii)[i], "radii[" + std::to_string(i) + "]");
      if (!(r > 0.0)) fail("radii[" + std::to_string(i) + "]", "radius must be positive");
      cfg.radii.push_back(r);
    }
  }

  if (const json* maps = optional_field(doc, "maps")) {
    if (!maps->is_object()) fail("maps", "expected an object of named maps");
    for (auto it = maps->begin(); it != maps->end(); ++it)
      cfg.maps.emplace(it.key(), parse_map(it.value(), space, "maps." + it.key()));
  }

  if (const json* seqs = optional_field(doc, "sequences")) {
    if (!seqs->is_object()) fail("sequences", "expected an object of named sequences");
    for (auto it = seqs->begin(); it != seqs->end(); ++it)
      cfg.sequences.emplace(it.key(),
                            parse_sequence(it.value(), space, base_dir, "sequences." + it.key()));
  }

  if (const json* solver = optional_field(doc, "solver")) {
    if (!solver->is_object()) fail("solver", "expected an object");
    if (const json* f = optional_field(*solver, "f"))
      cfg.solver.f_name = as_string(*f, "solver.f");
    if (const json* gm = optional_field(*solver, "g"))
      cfg.solver.g_name = as_string(*gm, "solver.g");
    if (const json* x0 = optional_field(*solver, "x0"))
      cfg.solver.start = parse_point(*x0, space, "solver.x0");
    if (const json* q = optional_field(*solver, "q")) {
      cfg.solver.q = as_double(*q, "solver.q");
      if (!(*cfg.solver.q > 0.0 && *cfg.solver.q < 1.0)) fail("solver.q", "must lie in (0, 1)");
    }
    if (const json* k = optional_field(*solver, "k")) {
      cfg.solver.k = as_double(*k, "solver.k");
      if (!(*cfg.solver.k >= 0.0 && *cfg.solver.k < 0.5))
        fail("solver.k", "must lie in [0, 1/2)");
    }
    if (const json* eps = optional_field(*solver, "eps")) {
      cfg.solver.eps = as_double(*eps, "solver.eps");
      if (!(*cfg.solver.eps > 0.0)) fail("solver.eps", "must be positive");
    }
    if (const json* mi = optional_field(*solver, "max_iter")) {
      cfg.solver.max_iter = as_count(*mi, "solver.max_iter");
      if (*cfg.solver.max_iter == 0) fail("solver.max_iter", "must be >= 1");
    }
    if (const json* seeds = optional_field(*solver, "seeds"))
      cfg.solver.seeds = parse_point_list(*seeds, space, "solver.seeds");
    for (const auto& name : {cfg.solver.f_name, cfg.solver.g_name})
      if (name && !cfg.maps.count(*name))
        fail("solver", "references undefined map \"" + *name + "\"");
  }

  if (const json* analysis = optional_field(doc, "analysis")) {
    if (!analysis->is_object()) fail("analysis", "expected an object");
    if (const json* s = optional_field(*analysis, "sequence")) {
      cfg.analysis.sequence_name = as_string(*s, "analysis.sequence");
      if (!cfg.sequences.count(*cfg.analysis.sequence_name))
        fail("analysis.sequence", "references undefined sequence \"" +
                                      *cfg.analysis.sequence_name + "\"");
    }
    if (const json* l = optional_field(*analysis, "limit"))
      cfg.analysis.limit = parse_point(*l, space, "analysis.limit");
    if (const json* ts = optional_field(*analysis, "tail_start"))
      cfg.analysis.tail_start = as_count(*ts, "analysis.tail_start");
    if (const json* t = optional_field(*analysis, "tol")) {
      cfg.analysis.tol = as_double(*t, "analysis.tol");
      if (!(*cfg.analysis.tol > 0.0)) fail("analysis.tol", "must be positive");
    }
    if (const json* cs = optional_field(*analysis, "cauchy_start"))
      cfg.analysis.cauchy_start = as_count(*cs, "analysis.cauchy_start");
    if (const json* cap = optional_field(*analysis, "exhaustive_cap"))
      cfg.analysis.exhaustive_cap = as_count(*cap, "analysis.exhaustive_cap");
    if (const json* cont = optional_field(*analysis, "continuity")) {
      if (!cont->is_object()) fail("analysis.continuity", "expected an object");
      ContinuitySection sec;
      const json& names = require_field(*cont, "analysis.continuity", "sequences");
      if (!names.is_array()) fail("analysis.continuity.sequences", "expected a list of names");
      for (const auto& n : names) {
        const std::string name = as_string(n, "analysis.continuity.sequences");
        if (!cfg.sequences.count(name))
          fail("analysis.continuity.sequences", "references undefined sequence \"" + name + "\"");
        sec.sequence_names.push_back(name);
      }
      sec.limits = parse_point_list(require_field(*cont, "analysis.continuity", "limits"), space,
                                    "analysis.continuity.limits");
      if (const json* ts = optional_field(*cont, "tail_start"))
        sec.tail_start = as_count(*ts, "analysis.continuity.tail_start");
      cfg.analysis.continuity = std::move(sec);
    }
  }

  if (const json* pairs = optional_field(doc, "pairs")) {
    if (!pairs->is_array()) fail("pairs", "expected a list of [x, y] pairs");
    for (std::size_t i = 0; i < pairs->size(); ++i) {
      const auto& pr = (*pairs)[i];
      const std::string pp = "pairs[" + std::to_string(i) + "]";
      if (!pr.is_array() || pr.size() != 2) fail(pp, "expected [x, y]");
      cfg.pairs.emplace_back(parse_point(pr[0], space, pp + "[0]"),
                             parse_point(pr[1], space, pp + "[1]"));
    }
  }

  if (const json* out = optional_field(doc, "output"))
    cfg.output = as_string(*out, "output");

  return cfg;
}

}  // namespace gnmetric::cli
