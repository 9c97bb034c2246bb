#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <ctime>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "coxeter/budget.hpp"
#include "coxeter/errors.hpp"
#include "coxeter/gensets.hpp"
#include "coxeter/group.hpp"
#include "coxeter/hurwitz.hpp"
#include "coxeter/reflength.hpp"
#include "coxeter/subgroup.hpp"

namespace coxeter {

using Json = nlohmann::ordered_json;

enum class Campaign {
  Carter,
  PqcCharacterization,
  Conjecture,
  MinFullTransitivity,
  LrNormalForm,
  MinEqualsMin,
  DihedralCrt,
  ClassMultiset,
};

inline const std::vector<std::pair<std::string, Campaign>>& campaign_names() {
  static const std::vector<std::pair<std::string, Campaign>> names = {
      {"carter", Campaign::Carter},
      {"pqc-characterization", Campaign::PqcCharacterization},
      {"conjecture", Campaign::Conjecture},
      {"min-full-transitivity", Campaign::MinFullTransitivity},
      {"lr-normal-form", Campaign::LrNormalForm},
      {"min-equals-min", Campaign::MinEqualsMin},
      {"dihedral-crt", Campaign::DihedralCrt},
      {"class-multiset", Campaign::ClassMultiset},
  };
  return names;
}

inline Campaign parse_campaign(const std::string& name) {
  for (const auto& [n, c] : campaign_names())
    if (n == name) return c;
  throw ParseError("unknown campaign", 0, name);
}

inline std::string campaign_name(Campaign c) {
  for (const auto& [n, x] : campaign_names())
    if (x == c) return n;
  return "?";
}

struct CampaignConfig {
  std::string group;
  Campaign campaign = Campaign::Carter;
  /// Lengths N = l_R(g) + offset; empty means {0, 2} plus 4 for rank <= 2.
  std::vector<int> offsets;
  std::size_t max_elements = 200'000;
  std::size_t max_tuples = 20'000'000;
  std::size_t max_mem_mb = 4096;
  double timeout_s = 0;  // 0 disables
  unsigned jobs = 1;

  void validate() const {
    if (max_elements == 0 || max_tuples == 0 || max_mem_mb == 0 || timeout_s < 0 || jobs == 0)
      throw std::invalid_argument("budgets and job count must be positive");
    for (int o : offsets)
      if (o < 0 || o % 2 != 0) throw std::invalid_argument("length offsets must be even and non-negative");
  }

  Json echo() const {
    Json j;
    j["group"] = group;
    j["campaign"] = campaign_name(campaign);
    j["offsets"] = offsets;
    j["max_elements"] = max_elements;
    j["max_tuples"] = max_tuples;
    j["max_mem_mb"] = max_mem_mb;
    j["timeout_s"] = timeout_s;
    return j;
  }
};

struct Summary {
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
};

// ---------------------------------------------------------------------------
// record helpers

inline Json tuple_json(std::span<const ReflectionIndex> t) { return Json(std::vector<int>(t.begin(), t.end())); }

inline Json orbit_json(const CoxeterGroup& g, const HurwitzOrbit& o) {
  Json j;
  j["length"] = o.representative.length();
  j["orbit_size"] = o.size;
  j["subgroup_order"] = o.invariant.subgroup_key.order;
  j["subgroup_key"] = o.invariant.subgroup_key.hex();
  Json classes = Json::array();
  for (auto c : o.invariant.class_multiset) classes.push_back(g.serialize(c));
  j["class_multiset"] = classes;
  j["representative"] = tuple_json(o.representative.factors);
  return j;
}

namespace detail {

/// One campaign item: the records it emits and its verdict.
struct ItemResult {
  std::vector<Json> records;
  bool passed = true;
};

/// Worker-local state; nothing here may influence the emitted bytes.
struct WorkerState {
  explicit WorkerState(const CoxeterGroup& g) : oracle(g) {}
  InvariantOracle oracle;
};

struct CampaignPlan {
  std::size_t items = 0;
  std::function<ItemResult(std::size_t, const Budget&, WorkerState&)> run;
};

inline std::vector<int> offsets_for(const CampaignConfig& cfg, const CoxeterGroup& g) {
  if (!cfg.offsets.empty()) return cfg.offsets;
  if (g.rank() <= 2) return {0, 2, 4};
  return {0, 2};
}

struct CampaignData {
  std::vector<int> cayley;
  std::vector<char> qc_mask;
  std::vector<ElementId> pqc;
  std::vector<std::pair<ElementId, std::size_t>> lengths;  // (element, N)
  std::vector<std::array<int, 3>> factorizations;
};

inline std::vector<ElementId> pqc_elements(const CoxeterGroup& g, const Budget& budget) {
  std::vector<ElementId> out;
  for (ElementId w = 0; w < g.order(); ++w)
    if (classify_pqc(g, g.element(w), false, budget).is_parabolic_quasi_coxeter) out.push_back(w);
  return out;
}

inline CampaignPlan plan(const CampaignConfig& cfg, const CoxeterGroup& g, const Budget& base,
                         std::shared_ptr<CampaignData> data) {
  CampaignPlan p;
  switch (cfg.campaign) {
    case Campaign::Carter: {
      data->cayley = cayley_distances(g);
      p.items = g.order();
      p.run = [&g, data](std::size_t i, const Budget&, WorkerState&) {
        ItemResult r;
        const auto x = static_cast<ElementId>(i);
        const int len = g.reflection_length(x);
        const Subgroup wx = parabolic_closure(g, g.element(x));
        std::size_t disagreements = 0;
        for (std::size_t t = 0; t < g.reflection_count(); ++t) {
          const bool below = leq_T(g, g.reflection(t), g.element(x));
          const bool fixes = g.fixed_space_contains(t, x);
          const bool inside = wx.contains(g.reflection_id(t));
          if (below != fixes || fixes != inside) ++disagreements;
        }
        r.passed = len == data->cayley[x] && disagreements == 0;
        Json j;
        j["element"] = g.serialize(x);
        j["reflection_length"] = len;
        j["cayley_distance"] = data->cayley[x];
        j["equivalence_disagreements"] = disagreements;
        r.records.push_back(j);
        return r;
      };
      break;
    }
    case Campaign::PqcCharacterization: {
      data->qc_mask = quasi_coxeter_mask(g, base);
      p.items = g.order();
      p.run = [&g, data](std::size_t i, const Budget& b, WorkerState& ws) {
        ItemResult r;
        const Element x = g.element(static_cast<ElementId>(i));
        const int len = g.reflection_length(x.id);
        const bool pqc = classify_pqc(g, x, false, b).is_parabolic_quasi_coxeter;
        const bool transitive = transitivity_on_reduced(g, x, b);
        const bool below_qc = below_quasi_coxeter(g, x, data->qc_mask);
        const int full = full_reflection_length(g, x, b, &ws.oracle.subgroups());
        const bool full_eq = full == 2 * static_cast<int>(g.rank()) - len;
        r.passed = pqc == transitive && pqc == below_qc && pqc == full_eq;
        Json j;
        j["element"] = g.serialize(x);
        j["reflection_length"] = len;
        j["pqc"] = pqc;
        j["hurwitz_transitive_on_reduced"] = transitive;
        j["below_quasi_coxeter"] = below_qc;
        j["full_reflection_length"] = full;
        r.records.push_back(j);
        return r;
      };
      break;
    }
    case Campaign::Conjecture:
    case Campaign::LrNormalForm: {
      data->pqc = pqc_elements(g, base);
      for (auto w : data->pqc)
        for (int o : offsets_for(cfg, g))
          data->lengths.emplace_back(w, static_cast<std::size_t>(g.reflection_length(w) + o));
      p.items = data->lengths.size();
      const bool lr = cfg.campaign == Campaign::LrNormalForm;
      p.run = [&g, data, lr](std::size_t i, const Budget& b, WorkerState& ws) {
        ItemResult r;
        const auto [w, n] = data->lengths[i];
        ConjectureReport rep = verify_conjecture(g, g.element(w), n, b, &ws.oracle);
        Json j;
        j["element"] = g.serialize(w);
        j["length"] = n;
        j["tuples"] = rep.tuple_count;
        j["orbits"] = rep.orbit_count;
        if (lr) {
          std::size_t shaped = 0;
          for (const auto& o : rep.orbits)
            if (o.lr_shape) shaped += o.size;
          r.passed = rep.shape_found_everywhere;
          j["factorizations_with_shape"] = shaped;
          j["shape_not_found"] = rep.tuple_count - shaped;
          r.records.push_back(j);
        } else {
          r.passed = rep.bijection && rep.invariants_constant;
          j["invariants"] = rep.invariant_count;
          j["bijection"] = rep.bijection;
          j["invariants_constant"] = rep.invariants_constant;
          r.records.push_back(j);
          for (const auto& o : rep.orbits) r.records.push_back(orbit_json(g, o));
        }
        return r;
      };
      break;
    }
    case Campaign::MinFullTransitivity: {
      data->pqc = pqc_elements(g, base);
      p.items = data->pqc.size();
      p.run = [&g, data](std::size_t i, const Budget& b, WorkerState& ws) {
        ItemResult r;
        const Element x = g.element(data->pqc[i]);
        const int full = full_reflection_length(g, x, b, &ws.oracle.subgroups());
        Partition part = partition_factorizations(g, x, static_cast<std::size_t>(full), b, &ws.oracle);
        std::size_t full_orbits = 0;
        for (const auto& o : part.orbits)
          if (o.full) ++full_orbits;
        r.passed = full_orbits == 1 && full == 2 * static_cast<int>(g.rank()) - g.reflection_length(x.id);
        Json j;
        j["element"] = g.serialize(x);
        j["full_reflection_length"] = full;
        j["orbits"] = part.orbits.size();
        j["full_orbits"] = full_orbits;
        r.records.push_back(j);
        return r;
      };
      break;
    }
    case Campaign::MinEqualsMin: {
      p.items = 1;
      p.run = [&g](std::size_t, const Budget& b, WorkerState&) {
        ItemResult r;
        MinEqualsMinResult res = check_min_equals_min(g, true, false, b);
        const bool expected = predicted_min_equals_min(g.datum());
        for (const auto& s : res.counterexamples) {
          Json j;
          j["group"] = g.name();
          j["subset"] = tuple_json(s);
          j["verdict"] = false;
          Json orders = Json::array();
          for (std::size_t drop = 0; drop < s.size(); ++drop) {
            ReflectionTuple y;
            for (std::size_t k = 0; k < s.size(); ++k)
              if (k != drop) y.push_back(s[k]);
            orders.push_back(closure_of_reflections(g, y, b).order());
          }
          j["witness"] = {{"drop_one_orders", orders}};
          r.records.push_back(j);
        }
        Json j;
        j["group"] = g.name();
        j["subset"] = nullptr;
        j["verdict"] = res.verdict;
        j["witness"] = {{"generating_sets_checked", res.checked}, {"expected", expected}};
        r.records.push_back(j);
        r.passed = res.verdict == expected;
        return r;
      };
      break;
    }
    case Campaign::DihedralCrt: {
      const auto& d = g.datum();
      if (d.factors.size() != 1 || !d.factors[0].is_dihedral())
        throw TypeMismatch("dihedral-crt needs a group I2(m)");
      const int m = d.factors[0].m;
      data->factorizations = coprime_factorizations(m);
      p.items = data->factorizations.size();
      p.run = [&g, data, m](std::size_t i, const Budget& b, WorkerState&) {
        ItemResult r;
        const auto [pp, qq, rr] = data->factorizations[i];
        const DihedralTriple t = crt_construct(m, pp, qq, rr);
        const auto refl = dihedral_reflections_of(t);
        auto order_of = [&](std::initializer_list<int> idx) {
          ReflectionTuple x;
          for (int k : idx) x.push_back(static_cast<ReflectionIndex>(k));
          return closure_of_reflections(g, x, b).order();
        };
        const std::size_t o12 = order_of({refl[0], refl[1]}), o13 = order_of({refl[0], refl[2]}),
                          o23 = order_of({refl[1], refl[2]}), o123 = order_of({refl[0], refl[1], refl[2]});
        const bool profile = std::gcd(t.a12, m) == pp && std::gcd(t.a13, m) == qq && std::gcd(t.a23, m) == rr;
        const bool formula = dihedral_generates(t) && !dihedral_pair_generates(t.a12, m) &&
                             !dihedral_pair_generates(t.a13, m) && !dihedral_pair_generates(t.a23, m);
        const bool oracle = o123 == g.order() && o12 < g.order() && o13 < g.order() && o23 < g.order();
        r.passed = profile && formula && oracle && t.a12 + t.a13 + t.a23 == 2 * m &&
                   dihedral_triple_of(m, refl[0], refl[1], refl[2]) == t;
        Json j;
        j["factors"] = {pp, qq, rr};
        j["triple"] = {t.a12, t.a13, t.a23};
        j["reflections"] = {refl[0], refl[1], refl[2]};
        j["pair_orders"] = {o12, o13, o23};
        j["triple_order"] = o123;
        r.records.push_back(j);
        return r;
      };
      break;
    }
    case Campaign::ClassMultiset: {
      p.items = 1;
      p.run = [&g](std::size_t, const Budget& b, WorkerState&) {
        ItemResult r;
        ClassMultisetResult res = genset_class_multiset_invariance(g, true, b);
        Json ms = Json::array();
        for (const auto& m : res.multisets) ms.push_back(tuple_json(m));
        Json j;
        j["group"] = g.name();
        j["verdict"] = res.verdict;
        j["generating_sets_checked"] = res.checked;
        j["multisets"] = ms;
        r.records.push_back(j);
        r.passed = res.verdict;
        return r;
      };
      break;
    }
  }
  return p;
}

inline std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

}  // namespace detail

/// Runs a campaign and streams the JSON-lines report: a header record, the
/// config echo, the item records in item order, and a summary footer.
/// Items run on cfg.jobs threads; output order never depends on scheduling.
inline Summary run_campaign(const CampaignConfig& cfg, std::ostream& out) {
  cfg.validate();
  GroupOptions opts;
  opts.max_elements = cfg.max_elements;
  const CoxeterGroup g = build_group(cfg.group, opts);

  Budget base;
  base.max_elements = cfg.max_elements;
  base.max_tuples = cfg.max_tuples;
  base.max_mem_mb = cfg.max_mem_mb;

  Json header;
  header["format"] = 1;
  header["timestamp"] = detail::utc_timestamp();
  header["jobs"] = cfg.jobs;
  out << header.dump() << '\n';
  out << Json{{"config", cfg.echo()}}.dump() << '\n';

  auto data = std::make_shared<detail::CampaignData>();
  const detail::CampaignPlan plan = detail::plan(cfg, g, base, data);

  std::vector<std::string> lines(plan.items);
  std::vector<char> ready(plan.items, 0);
  std::vector<int> verdict(plan.items, 0);  // 1 passed, 2 failed, 3 skipped
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;

  auto worker = [&] {
    detail::WorkerState ws(g);
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= plan.items) return;
      std::string text;
      int v = 0;
      try {
        Budget b = base;
        b.with_timeout(cfg.timeout_s);
        detail::ItemResult r = plan.run(i, b, ws);
        v = r.passed ? 1 : 2;
        for (auto& rec : r.records) {
          Json line;
          line["item"] = i;
          line["status"] = r.passed ? "passed" : "failed";
          for (auto& [k, val] : rec.items()) line[k] = val;
          text += line.dump();
          text += '\n';
        }
      } catch (const CapExceeded& e) {
        v = 3;
        Json line;
        line["item"] = i;
        line["status"] = "skipped";
        line["cap"] = e.cap;
        text = line.dump() + '\n';
      } catch (...) {
        std::lock_guard lock(mu);
        if (!fatal) fatal = std::current_exception();
        v = 2;
      }
      {
        std::lock_guard lock(mu);
        lines[i] = std::move(text);
        verdict[i] = v;
        ready[i] = 1;
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  const unsigned jobs = std::max(1u, cfg.jobs);
  for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);

  Summary s;
  for (std::size_t i = 0; i < plan.items; ++i) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return ready[i] != 0; });
    out << lines[i];
    lines[i].clear();
    if (verdict[i] == 1) ++s.passed;
    else if (verdict[i] == 2) ++s.failed;
    else ++s.skipped;
  }
  for (auto& t : pool) t.join();
  if (fatal) std::rethrow_exception(fatal);
  s.checked = s.passed + s.failed;

  out << Json{{"summary", {{"checked", s.checked}, {"passed", s.passed}, {"failed", s.failed}, {"skipped", s.skipped}}}}
             .dump()
      << '\n';
  out.flush();
  return s;
}

/// Drops the header record (first line) so reports can be compared bytewise.
inline std::string strip_report_header(const std::string& report) {
  auto nl = report.find('\n');
  return nl == std::string::npos ? std::string{} : report.substr(nl + 1);
}

}  // namespace coxeter
