#include "pc/json_io.hpp"

namespace pc {

std::string rational_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_den() == 1 ? c.get_num().get_str() : c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

Json integers(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

Json precision_json(int prec) { return prec >= PadicNumber::kExact ? Json(nullptr) : Json(prec); }

}  // namespace

Json to_json(const PadicNumber& x) {
  Json j;
  j["value"] = x.is_zero() ? std::string("0") : rational_string(x.to_rational());
  j["precision"] = precision_json(x.abs_precision());
  if (!x.is_zero()) j["valuation"] = x.valuation();
  return j;
}

Json to_json(const PadicPoly& f) {
  Json a = Json::array();
  for (const auto& c : f.coeffs) a.push_back(to_json(c));
  return {{"prime", f.prime}, {"coefficients", a}, {"text", to_string(f, 't')}};
}

Json to_json(const TruncatedSeries& s) {
  Json a = Json::array();
  for (const auto& c : s.coeffs()) a.push_back(to_json(c));
  const TailBound& t = s.tail();
  Json tail;
  tail["known"] = t.known;
  tail["exact"] = t.exact;
  if (t.known && !t.exact) {
    tail["offset"] = t.offset;
    tail["slope"] = t.slope;
    tail["log_loss"] = t.log_loss;
  }
  return {{"truncation", s.truncation()}, {"coefficients", a}, {"tail", tail}};
}

Json to_json(const ProjPointFp& pt) { return Json(pt.coords); }

Json to_json(const ReductionImage& img) {
  Json pts = Json::array();
  for (const auto& p : img.points) pts.push_back(to_json(p));
  Json cert = Json::array();
  for (const auto& d : img.certificate)
    cert.push_back({{"chart", to_string(d.chart)},
                    {"center", d.center.get_str()},
                    {"radius", d.radius},
                    {"value", to_json(d.value)}});
  Json j;
  j["size"] = img.points.size();
  j["points"] = pts;
  j["certificate"] = cert;
  j["max_depth_used"] = img.max_depth_used;
  j["coordinate_change"] = img.coordinate_change;
  return j;
}

Json to_json(const NewtonPolygon& np) {
  Json verts = Json::array();
  for (const auto& v : np.vertices) verts.push_back({{"n", v.n}, {"v", v.v}, {"stable", v.stable}});
  return {{"prime", np.prime}, {"truncation", np.truncation}, {"vertices", verts}};
}

Json to_json(const NAndN& nn) {
  return {{"n", nn.n}, {"N", nn.N ? Json(*nn.N) : Json("unbounded-within-truncation")}, {"height", nn.height}};
}

Json to_json(const WeierstrassFactorization& w) {
  return {{"degree", w.degree},
          {"M", w.M},
          {"T", w.T},
          {"poly_part", to_json(w.poly_part)},
          {"unit_part", to_json(w.unit_part)}};
}

Json to_json(const PatchNode& node) {
  Json cols = Json::array();
  for (const auto& c : node.columns) {
    Json col;
    col["column"] = c.column;
    col["case"] = to_string(c.kind);
    if (c.subcase != UnitSubcase::None) col["subcase"] = to_string(c.subcase);
    if (c.patch) col["patch"] = {{"a0", c.patch->a0}, {"b0", c.patch->b0}, {"c0", c.patch->c0}};
    col["smooth_count"] = c.smooth_count;
    col["value_mod_p"] = c.value_mod_p;
    if (c.child) col["child"] = to_json(*c.child);
    cols.push_back(std::move(col));
  }
  Json h = Json::array();
  for (const auto& c : node.h.coeffs) h.push_back(c.is_zero() ? std::string("0") : rational_string(c.to_rational()));
  Json j;
  j["depth"] = node.depth;
  j["h"] = h;
  j["parent_column"] = node.parent_column ? Json(*node.parent_column) : Json(nullptr);
  j["columns"] = cols;
  return j;
}

Json to_json(const DecentModel& m) {
  Json j;
  j["prime"] = m.prime;
  j["genus"] = m.genus;
  j["total_smooth"] = m.total_smooth;
  j["infinity_count"] = m.infinity_count;
  j["max_depth_reached"] = m.max_depth_reached;
  j["depth_guard"] = m.depth_guard;
  j["guard_hits"] = m.guard_hits;
  j["root"] = m.root ? to_json(*m.root) : Json(nullptr);
  return j;
}

template <class K>
Json histogram_json(const std::map<K, long>& h) {
  Json a = Json::array();
  for (const auto& [k, v] : h) a.push_back({k, v});
  return a;
}

Json to_json(const MCResult& r) {
  Json j;
  j["trials"] = r.trials;
  j["mean"] = rational_string(r.mean);
  j["mean_decimal"] = r.mean.get_d();
  j["stderr"] = r.stderr_;
  j["guard_hits"] = r.guard_hits;
  j["histogram"] = histogram_json(r.histogram);
  j["depth_histogram"] = histogram_json(r.depth_histogram);
  return j;
}

Json to_json(const EnumResult& r) {
  return {{"k", r.k}, {"value", rational_string(r.value)}, {"per_column", rational_string(r.per_column)}};
}

Json to_json(const X0Report& r) {
  Json tails = Json::array();
  for (const auto& t : r.tails)
    tails.push_back({{"B", t.bound},
                     {"count", t.count},
                     {"frequency", rational_string(t.frequency)},
                     {"bound", rational_string(t.tail_bound)}});
  Json j;
  j["trials"] = r.trials;
  j["mean"] = rational_string(r.mean);
  j["mean_decimal"] = r.mean.get_d();
  j["stderr"] = r.stderr_;
  j["guard_hits"] = r.guard_hits;
  j["histogram"] = histogram_json(r.histogram);
  j["tails"] = tails;
  return j;
}

Json to_json(const FrequencyTable& t) {
  Json rows = Json::array();
  for (size_t i = 0; i < t.labels.size(); ++i)
    rows.push_back({{"case", t.labels[i]},
                    {"count", t.counts[i]},
                    {"frequency", rational_string(Rational(t.counts[i], t.trials))},
                    {"expected", rational_string(t.expected[i])}});
  return {{"trials", t.trials}, {"cases", rows}};
}

Json to_json(const ResidueDisk& d) {
  Json j;
  j["chart"] = d.infinity ? "infinity" : "affine";
  if (!d.infinity) j["center"] = {d.x, d.y};
  j["uniformizer"] = to_string(d.uniformizer);
  return j;
}

Json to_json(const DiskExpansion& e) {
  Json w = Json::array();
  for (const auto& s : e.w) w.push_back(to_json(s));
  return {{"disk", to_json(e.disk)},
          {"truncation", e.truncation},
          {"precision", e.precision},
          {"n_D", e.n_D},
          {"coordinate", integers(e.coordinate)},
          {"w", w}};
}

Json to_json(const DiskResult& r) {
  Json lead = Json::array();
  for (const auto& l : r.ell_leading)
    lead.push_back({{"degree", l.degree}, {"coefficient", rational_string(l.coefficient)}});
  return {{"disk", to_json(r.disk)}, {"n_D", r.n_D},         {"bound", r.bound},
          {"truncation", r.truncation}, {"image", to_json(r.image)}, {"ell_leading_terms", lead}};
}

Json to_json(const HypothesesReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  return {{"all_pass", r.all_pass()}, {"checks", checks}};
}

Json to_json(const RhoLogResult& r) {
  Json disks = Json::array();
  for (const auto& d : r.disks) disks.push_back(to_json(d));
  Json pts = Json::array();
  for (const auto& p : r.union_points) pts.push_back(to_json(p));
  Json j;
  j["prime"] = r.prime;
  j["genus"] = r.genus;
  j["disks"] = disks;
  j["union"] = pts;
  j["full_image"] = r.full_image;
  j["sum_n_D"] = r.sum_n_D;
  j["curve_image_bound"] = rational_string(r.curve_bound);
  j["hypotheses"] = r.hypotheses ? to_json(*r.hypotheses) : Json(nullptr);
  return j;
}

Json to_json(const BoundReport& b) {
  Json j;
  j["formula"] = b.formula;
  j["p"] = b.prime;
  j["g"] = b.genus;
  if (b.disks) j["d"] = *b.disks;
  if (b.excluded) j["excluded"] = *b.excluded;
  j["value"] = rational_string(b.value);
  return j;
}

Json document(const std::string& command, Json result) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["result"] = std::move(result);
  return j;
}

}  // namespace pc
