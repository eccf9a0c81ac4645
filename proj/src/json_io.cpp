#include "minorank/json_io.hpp"

#include "minorank/errors.hpp"

namespace minorank {

namespace {

Json mask_to_json(AxisMask m) {
  Json a = Json::array();
  for (int x : mask_axes(m)) a.push_back(x + 1);
  return a;
}

AxisMask mask_from_json(const Json& j, int d) {
  AxisMask m = 0;
  for (const auto& x : j) {
    const int a = x.get<int>();
    if (a < 1 || a > d) fail(ErrorKind::InvalidInput, "axis index out of range");
    if (m >> (a - 1) & 1) fail(ErrorKind::InvalidInput, "repeated axis in a part");
    m |= AxisMask(1) << (a - 1);
  }
  if (m == 0) fail(ErrorKind::InvalidInput, "empty part");
  return m;
}

Json partition_to_json(const Partition& p) {
  Json a = Json::array();
  for (AxisMask part : p) a.push_back(mask_to_json(part));
  return a;
}

Partition partition_from_json(const Json& j, int d) {
  Partition p;
  AxisMask seen = 0;
  for (const auto& part : j) {
    AxisMask m = mask_from_json(part, d);
    if (m & seen) fail(ErrorKind::InvalidInput, "parts overlap");
    seen |= m;
    p.push_back(m);
  }
  if (seen != full_mask(d)) fail(ErrorKind::InvalidInput, "parts do not cover every axis");
  return canonical_partition(p);
}

std::string key_of(const std::vector<Label>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "]";
}

std::vector<long long> parse_key(const std::string& s) {
  Json j = Json::parse(s, nullptr, false);
  if (j.is_discarded() || !j.is_array()) fail(ErrorKind::InvalidInput, "bad key " + s);
  return j.get<std::vector<long long>>();
}

// Shape of the part axes and a walk over its positions.
std::vector<std::size_t> part_shape(const Tensor& like, AxisMask part) {
  std::vector<std::size_t> shape;
  for (int a : mask_axes(part)) shape.push_back(like.extent(a));
  return shape;
}

}  // namespace

Json tensor_to_json(const Tensor& t) {
  Json j;
  j["field_order"] = t.field().p();
  j["axes"] = Json::array();
  for (const Axis& a : t.axes()) j["axes"].push_back(a);
  j["entries"] = Json::array();
  for (std::size_t i = 0; i < t.values().size(); ++i)
    if (t.value(i)) j["entries"].push_back(Json::array({t.labels_of(i), int(t.value(i))}));
  return j;
}

Tensor tensor_from_json(const Json& j) {
  try {
    const int p = j.at("field_order").get<int>();
    std::vector<Axis> axes;
    for (const auto& a : j.at("axes")) axes.push_back(a.get<Axis>());
    for (const Axis& a : axes)
      for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] <= a[i - 1]) fail(ErrorKind::InvalidInput, "labels must be strictly increasing per axis");
    Tensor t(Field(p), axes);
    for (const auto& e : j.at("entries")) {
      auto xs = e.at(0).get<std::vector<Label>>();
      const long long v = e.at(1).get<long long>();
      if (xs.size() != axes.size()) fail(ErrorKind::InvalidInput, "entry has the wrong number of coordinates");
      if (v < 0 || v >= p) fail(ErrorKind::InvalidInput, "entry value outside [0, p)");
      for (std::size_t a = 0; a < xs.size(); ++a)
        if (!t.position(int(a), xs[a])) fail(ErrorKind::InvalidInput, "entry label not on its axis");
      t.set_labels(xs, Elem(v));
    }
    return t;
  } catch (const Json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("tensor JSON: ") + e.what());
  }
}

Json family_to_json(const PartitionFamily& r) {
  Json j;
  j["d"] = r.order();
  j["partitions"] = Json::array();
  for (const Partition& p : r.partitions()) j["partitions"].push_back(partition_to_json(p));
  return j;
}

PartitionFamily family_from_json(const Json& j) {
  try {
    const int d = j.at("d").get<int>();
    if (d < 1 || d > 16) fail(ErrorKind::InvalidInput, "family order out of range");
    std::vector<Partition> ps;
    for (const auto& p : j.at("partitions")) ps.push_back(partition_from_json(p, d));
    if (ps.empty()) fail(ErrorKind::InvalidInput, "empty family");
    return PartitionFamily(d, ps);
  } catch (const Json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("family JSON: ") + e.what());
  }
}

Json certificate_to_json(const RankCertificate& cert, const Tensor& like) {
  Json j;
  j["notion"] = cert.notion;
  j["value"] = cert.value();
  j["terms"] = Json::array();
  for (const RankTerm& term : cert.terms) {
    Json jt;
    jt["partition"] = partition_to_json(term.partition);
    Json fs = Json::object();
    for (const Factor& f : term.factors) {
      const std::vector<int> axes = mask_axes(f.part);
      const auto shape = part_shape(like, f.part);
      Json vals = Json::object();
      std::vector<std::size_t> idx(shape.size(), 0);
      std::size_t k = 0;
      do {
        if (f.values[k]) {
          std::vector<Label> xs;
          for (std::size_t i = 0; i < axes.size(); ++i) xs.push_back(like.axis(axes[i])[idx[i]]);
          vals[key_of(xs)] = int(f.values[k]);
        }
        ++k;
      } while (next_index(shape, idx));
      std::vector<Label> part1;
      for (int a : axes) part1.push_back(Label(a + 1));
      fs[key_of(part1)] = vals;
    }
    jt["factors"] = fs;
    j["terms"].push_back(jt);
  }
  if (cert.modifier) j["modifier"] = tensor_to_json(*cert.modifier);
  j["family"] = family_to_json(cert.family);
  return j;
}

RankCertificate certificate_from_json(const Json& j, const Tensor& like) {
  try {
    RankCertificate c;
    const int d = like.order();
    c.notion = j.at("notion").get<std::string>();
    if (j.contains("family")) c.family = family_from_json(j.at("family"));
    for (const auto& jt : j.at("terms")) {
      RankTerm term;
      term.partition = partition_from_json(jt.at("partition"), d);
      for (AxisMask part : term.partition) {
        Factor f;
        f.part = part;
        const auto axes = mask_axes(part);
        const auto shape = part_shape(like, part);
        std::size_t n = 1;
        for (auto s : shape) n *= s;
        f.values.assign(n, 0);
        std::vector<Label> part1;
        for (int a : axes) part1.push_back(Label(a + 1));
        const std::string key = key_of(part1);
        if (!jt.at("factors").contains(key)) fail(ErrorKind::InvalidInput, "missing factor " + key);
        for (const auto& [k, v] : jt.at("factors").at(key).items()) {
          auto xs = parse_key(k);
          if (xs.size() != axes.size()) fail(ErrorKind::InvalidInput, "factor key has the wrong length");
          std::size_t lin = 0;
          for (std::size_t i = 0; i < axes.size(); ++i) {
            auto pos = like.position(axes[i], Label(xs[i]));
            if (!pos) fail(ErrorKind::InvalidInput, "factor label not on its axis");
            lin = lin * shape[i] + *pos;
          }
          const long long val = v.get<long long>();
          if (val < 0 || val >= like.field().p()) fail(ErrorKind::InvalidInput, "factor value outside [0, p)");
          f.values[lin] = Elem(val);
        }
        term.factors.push_back(std::move(f));
      }
      c.terms.push_back(std::move(term));
    }
    if (j.contains("modifier")) c.modifier = tensor_from_json(j.at("modifier"));
    return c;
  } catch (const Json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("certificate JSON: ") + e.what());
  }
}

Json selection_to_json(const MinorSelection& sel) {
  Json j;
  j["disjoint"] = sel.disjoint;
  j["sets"] = Json::array();
  for (const Axis& a : sel.sets) j["sets"].push_back(a);
  return j;
}

std::string canonical_dump(const Json& j) { return j.dump() + "\n"; }

}  // namespace minorank
