#include "gnmetric_cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <system_error>

namespace gnmetric::cli {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) throw validation_error("cannot serialize a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // Keep a float marker so readers preserve the type.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void dump_value(const ojson& v, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
  switch (v.type()) {
    case ojson::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += ojson(it.key()).dump();
        out += ": ";
        dump_value(it.value(), out, indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case ojson::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_value(e, out, indent, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case ojson::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();  // strings (escaped), integers, booleans, null
      return;
  }
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ojson to_json(const Point& p) {
  if (p.is_index()) return p.as_index();
  const auto& v = p.as_real();
  if (v.size() == 1) return v[0];
  ojson arr = ojson::array();
  for (double c : v) arr.push_back(c);
  return arr;
}

namespace {

ojson tuple_json(const Tuple& t) {
  ojson arr = ojson::array();
  for (const Point& p : t) arr.push_back(to_json(p));
  return arr;
}

}  // namespace

ojson to_json(const Witness& w) {
  ojson o;
  o["tuple"] = tuple_json(w.tuple);
  if (w.aux_tuple) o["aux_tuple"] = tuple_json(*w.aux_tuple);
  if (w.interpolant) o["interpolant"] = to_json(*w.interpolant);
  if (w.radius) o["radius"] = *w.radius;
  o["lhs"] = w.lhs;
  o["rhs"] = w.rhs;
  o["margin"] = w.margin;
  return o;
}

ojson to_json(const AxiomReport& r) {
  ojson o;
  o["suite"] = r.suite;
  o["tuples_checked"] = r.tuples_checked;
  o["seed"] = r.seed;
  o["exhaustive"] = r.exhaustive;
  ojson axioms = ojson::array();
  for (const auto& v : r.verdicts) {
    ojson a;
    a["id"] = v.axiom_id;
    a["verdict"] = to_string(v.verdict);
    a["applicable"] = v.applicable;
    if (v.witness) a["witness"] = to_json(*v.witness);
    axioms.push_back(std::move(a));
  }
  o["axioms"] = std::move(axioms);
  o["all_pass"] = r.all_pass();
  return o;
}

ojson to_json(const IterationTrace& t) {
  ojson o;
  o["termination"] = to_string(t.termination);
  o["q"] = t.q;
  o["fixed_point"] = to_json(t.fixed_point);
  if (t.termination == Termination::certified) o["certified_at"] = t.certified_at;
  if (!t.note.empty()) o["note"] = t.note;
  ojson iterates = ojson::array();
  for (const Point& p : t.iterates) iterates.push_back(to_json(p));
  o["iterates"] = std::move(iterates);
  o["step_values"] = t.step_values;
  o["certificates"] = t.certificates;
  return o;
}

ojson to_json(const ConvergenceReport& r) {
  ojson o;
  o["verdict"] = r.converged ? "converged-within-tol" : "not-converged-at-prefix";
  o["sup_iterate_repeated"] = r.sup_iterate_repeated;
  o["sup_limit_repeated"] = r.sup_limit_repeated;
  o["tail_start"] = r.tail_start;
  o["tol"] = r.tol;
  o["cross_bound_ok"] = r.cross_bound_ok;
  o["dg_bound_ok"] = r.dg_bound_ok;
  return o;
}

ojson to_json(const CauchyReport& r) {
  ojson o;
  o["two_index_sup"] = r.two_index_sup;
  o["full_sup"] = r.full_sup;
  o["amplification_ok"] = r.amplification_ok;
  o["full_mode"] = r.full_exhaustive ? "exhaustive" : "subsampled";
  o["combinations_checked"] = r.combinations_checked;
  o["start_index"] = r.start_index;
  return o;
}

ojson to_json(const ContinuityProbeResult& r) {
  ojson o;
  o["holds"] = r.holds;
  o["worst_margin"] = r.worst_margin;
  o["checked"] = r.checked;
  return o;
}

std::string dump_report(const ojson& doc, int indent) {
  std::string out;
  dump_value(doc, out, indent, 0);
  out += "\n";
  return out;
}

ojson make_report(const std::string& command, ojson payload) {
  ojson doc;
  ojson meta;
  meta["tool"] = "gnmetric";
  meta["version"] = "0.1.0";
  meta["command"] = command;
  meta["generated_at"] = utc_timestamp();
  doc["meta"] = std::move(meta);
  doc["payload"] = std::move(payload);
  return doc;
}

std::string dump_payload(const ojson& report_doc, int indent) {
  return dump_report(report_doc.at("payload"), indent);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw validation_error("cannot write to " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw validation_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw validation_error("cannot move report into place: " + ec.message());
}

}  // namespace gnmetric::cli
