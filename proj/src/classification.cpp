// SPDX-License-Identifier: Apache-2.0

#include "psat/classification.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "psat/exact.hpp"
#include "psat/function_table.hpp"
#include "psat/io.hpp"

namespace psat {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::FiPcsp: return "fipcsp";
    case Mode::FPcsp: return "fpcsp";
    case Mode::Usefulness: return "usefulness";
  }
  return "?";
}

std::optional<Mode> parse_mode(const std::string& s) {
  for (Mode m : {Mode::FiPcsp, Mode::FPcsp, Mode::Usefulness})
    if (s == mode_name(m)) return m;
  return std::nullopt;
}

Group group_for(Mode m) {
  switch (m) {
    case Mode::FiPcsp: return Group::Perm;
    case Mode::FPcsp: return Group::PermComplement;
    case Mode::Usefulness: return Group::PermShift;
  }
  return Group::Perm;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Tractable: return "tractable";
    case Status::NPHard: return "nphard";
    case Status::Useful: return "useful";
    case Status::Useless: return "useless";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

std::optional<Status> parse_status(const std::string& s) {
  for (Status t : {Status::Tractable, Status::NPHard, Status::Useful, Status::Useless, Status::Unknown})
    if (s == status_name(t)) return t;
  return std::nullopt;
}

std::string ClassificationRecord::certificate_json() const {
  nlohmann::json j = nlohmann::json::object();
  if (!witnesses.empty()) {
    auto& w = j["witnesses"] = nlohmann::json::array();
    for (const auto& x : witnesses) w.push_back(nlohmann::json::parse(x.json()));
  }
  if (certificate) j["certificate"] = nlohmann::json::parse(certificate->json());
  if (shift) j["shift"] = point_string(*shift, predicate.arity());
  if (!note.empty()) j["note"] = note;
  return j.dump();
}

namespace {

template <class F>
void parallel_for(std::size_t n, int jobs, F&& f) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

bool positive(Status s) { return s == Status::Tractable || s == Status::Useful; }
bool negative(Status s) { return s == Status::NPHard || s == Status::Useless; }

}  // namespace

ClassificationRecord classify_promise_sat(const Predicate& a, const HardnessBudgets& b,
                                          bool audit, int ell_budget) {
  if (a.contains_zero()) throw std::invalid_argument("fiPCSP predicate must exclude 0^k");
  ClassificationRecord r;
  r.predicate = a;
  r.mode = Mode::FiPcsp;
  auto screen = five_family_screen(a);
  r.family_bits = screen.screen_bits();
  if (screen.tractable()) {
    r.status = Status::Tractable;
    r.witnesses = std::move(screen.witnesses);
    return r;
  }
  const auto h = small_fixing_assignments(a, b, audit);
  for (int i = 0; i < 4; ++i)
    if (h.outcomes[static_cast<std::size_t>(i)].holds) r.theorem_bits |= 1u << i;
  r.theorems_complete = audit;
  r.inconclusive = h.any_inconclusive();
  r.split_reading_differs = h.split_reading_differs;
  if (h.certificate) {
    r.status = Status::NPHard;
    r.certificate = h.certificate;
    return r;
  }
  r.status = Status::Unknown;
  nlohmann::json note;
  note["hardness"] = nlohmann::json::parse(h.json());
  if (ell_budget > 0) {
    const auto v = block_symmetric_scan(a, ell_budget);
    nlohmann::json blp;
    blp["kind"] = v.kind == BlpAipVerdict::Kind::RefutedAt ? "refuted" : "exhausted";
    blp["ell"] = v.ell;
    std::vector<int> present;
    for (const auto& w : v.witnesses) present.push_back(w.ell);
    blp["present_ell"] = present;
    note["blp_aip"] = blp;
    r.inconclusive = r.inconclusive || v.inconclusive;
  }
  r.note = note.dump();
  return r;
}

std::string Summary::json(int k, Mode m) const {
  nlohmann::json j;
  j["arity"] = k;
  j["mode"] = mode_name(m);
  j["total"] = total;
  if (m == Mode::Usefulness) {
    j["useful"] = positive;
    j["useless"] = negative;
  } else {
    j["tractable"] = positive;
    j["nphard"] = negative;
  }
  j["unknown"] = unknown;
  j["inconclusive"] = inconclusive;
  return j.dump();
}

Summary Sweep::summary() const {
  Summary s;
  for (const auto& r : records) {
    ++s.total;
    if (positive(r.status))
      ++s.positive;
    else if (negative(r.status))
      ++s.negative;
    else
      ++s.unknown;
    if (r.inconclusive) ++s.inconclusive;
  }
  return s;
}

void Sweep::reindex() {
  index.clear();
  for (std::size_t i = 0; i < records.size(); ++i) index[records[i].predicate.mask()] = i;
}

const ClassificationRecord* Sweep::find(const Predicate& a) const {
  const auto c = canonical_form(a, group_for(mode));
  const auto it = index.find(c.mask());
  return it == index.end() ? nullptr : &records[it->second];
}

namespace {

std::vector<Predicate> by_size(std::vector<Predicate> v) {
  std::stable_sort(v.begin(), v.end(),
                   [](const Predicate& x, const Predicate& y) { return x.size() < y.size(); });
  return v;
}

class DirectCache {
 public:
  DirectCache(const std::string& dir, int k, bool audit) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    path_ = dir + "/fipcsp_k" + std::to_string(k) + (audit ? "_audit" : "") + ".direct.csv";
    std::ifstream in(path_);
    for (std::string line; std::getline(in, line);) {
      if (line.empty() || line[0] == '#' || line.rfind("mask,", 0) == 0) continue;
      try {
        auto r = parse_record_line(line);
        known_[r.predicate.mask()] = std::move(r);
      } catch (const std::exception&) {
        // a torn final line from an interrupted run
      }
    }
    out_.open(path_, std::ios::app);
    if (known_.empty()) out_ << records_csv_header() << '\n';
  }

  const ClassificationRecord* get(const Mask& m) const {
    const auto it = known_.find(m);
    return it == known_.end() ? nullptr : &it->second;
  }

  void put(const ClassificationRecord& r) {
    if (path_.empty()) return;
    std::lock_guard lock(mu_);
    out_ << record_csv_line(r) << '\n';
    out_.flush();
  }

 private:
  std::string path_;
  std::unordered_map<Mask, ClassificationRecord, MaskHash> known_;
  std::ofstream out_;
  std::mutex mu_;
};

Sweep classify_fipcsp_all(int k, const SweepOptions& opt) {
  const auto budgets = opt.budgets.value_or(HardnessBudgets::defaults(k));
  auto say = [&](const std::string& s) {
    if (opt.progress) opt.progress(s);
  };
  const auto canon = by_size(enumerate_canonical(k, Group::Perm));
  say("fipcsp k=" + std::to_string(k) + ": " + std::to_string(canon.size()) + " predicates");
  DirectCache cache(opt.cache_dir, k, opt.audit);

  std::vector<ClassificationRecord> recs(canon.size());
  std::vector<std::vector<Mask>> orbits(canon.size());
  // Every predicate is screened directly; the screen is cheap and the family
  // audit needs all of it.
  parallel_for(canon.size(), opt.jobs, [&](std::size_t i) {
    orbits[i] = orbit(canon[i], Group::Perm);
    auto& r = recs[i];
    r.predicate = canon[i];
    const auto s = five_family_screen(canon[i]);
    r.family_bits = s.screen_bits();
    if (s.tractable()) {
      r.status = Status::Tractable;
      r.witnesses = s.witnesses;
    }
  });

  // Hardness in ascending |A|; within a size layer no predicate is a proper
  // superset of another, so the layer is evaluated in parallel.
  std::vector<std::size_t> hard_direct, unknown_direct;
  std::size_t evaluated = 0;
  for (std::size_t lo = 0; lo < canon.size();) {
    std::size_t hi = lo;
    while (hi < canon.size() && canon[hi].size() == canon[lo].size()) ++hi;
    std::vector<std::size_t> todo;
    for (std::size_t i = lo; i < hi; ++i) {
      if (recs[i].status == Status::Tractable) continue;
      if (!opt.audit) {
        const auto mask = canon[i].mask();
        auto it = std::find_if(hard_direct.begin(), hard_direct.end(),
                               [&](std::size_t h) { return orbit_subset(orbits[h], mask); });
        if (it != hard_direct.end()) {
          recs[i].status = Status::NPHard;
          recs[i].from = canon[*it];
          recs[i].certificate = recs[*it].certificate;
          continue;
        }
      }
      todo.push_back(i);
    }
    parallel_for(todo.size(), opt.jobs, [&](std::size_t j) {
      const std::size_t i = todo[j];
      if (const auto* c = cache.get(canon[i].mask())) {
        recs[i] = *c;
        return;
      }
      // Only inclusion-minimal unresolved predicates get the block-symmetric scan.
      const bool minimal_unknown = std::none_of(
          unknown_direct.begin(), unknown_direct.end(),
          [&](std::size_t u) { return orbit_subset(orbits[u], canon[i].mask()); });
      recs[i] = classify_promise_sat(canon[i], budgets, opt.audit, minimal_unknown ? opt.ell_budget : 0);
      cache.put(recs[i]);
    });
    for (std::size_t i : todo) {
      if (recs[i].status == Status::NPHard) hard_direct.push_back(i);
      if (recs[i].status == Status::Unknown) unknown_direct.push_back(i);
    }
    evaluated += todo.size();
    say("  |A|=" + std::to_string(canon[lo].size()) + ": " + std::to_string(todo.size()) +
        " direct hardness evaluations");
    lo = hi;
  }
  // Tractability propagates to subsets; every tractable predicate is already
  // screened directly, so this only cross-checks closure.
  for (std::size_t i = 0; i < canon.size(); ++i) {
    if (recs[i].status != Status::NPHard) continue;
    for (std::size_t j = 0; j < canon.size(); ++j)
      if (recs[j].status == Status::Tractable && canon[j].size() >= canon[i].size() &&
          orbit_subset(orbits[i], canon[j].mask()))
        throw std::logic_error("hard predicate " + canon[i].to_string() + " below tractable " +
                               canon[j].to_string());
  }
  (void)evaluated;

  Sweep s;
  s.k = k;
  s.mode = Mode::FiPcsp;
  s.records = std::move(recs);
  for (auto& r : s.records) r.mode = Mode::FiPcsp;
  std::sort(s.records.begin(), s.records.end(),
            [](const auto& x, const auto& y) { return x.predicate < y.predicate; });
  s.complete = true;
  s.reindex();

  // The minimal hard table reports every theorem, so its rows are decided
  // in full even outside audit mode.
  std::vector<std::size_t> rows;
  for (const auto& row : minimal_maximal(s).minimal_negative) {
    const auto i = s.index.at(row.predicate.mask());
    if (!s.records[i].theorems_complete) rows.push_back(i);
  }
  parallel_for(rows.size(), opt.jobs, [&](std::size_t j) {
    auto& r = s.records[rows[j]];
    const auto h = small_fixing_assignments(r.predicate, budgets, true);
    r.theorem_bits = 0;
    for (int i = 0; i < 4; ++i)
      if (h.outcomes[static_cast<std::size_t>(i)].holds) r.theorem_bits |= 1u << i;
    r.theorems_complete = true;
    r.inconclusive = r.inconclusive || h.any_inconclusive();
    r.split_reading_differs = h.split_reading_differs;
  });
  return s;
}

}  // namespace

Sweep classify_all(int k, Mode mode, const SweepOptions& opt) {
  if (k < 2 || k > 5) throw std::invalid_argument("sweeps support 2 <= k <= 5");
  auto fi = classify_fipcsp_all(k, opt);
  if (mode == Mode::FiPcsp) return fi;
  if (mode == Mode::FPcsp) return derive_fpcsp(fi);
  return derive_usefulness(fi, opt.audit);
}

namespace {

ClassificationRecord lift_fpcsp(const Predicate& a, const ClassificationRecord& ra,
                                const ClassificationRecord* rb) {
  ClassificationRecord r;
  r.predicate = a;
  r.mode = Mode::FPcsp;
  r.family_bits = ra.family_bits;
  r.inconclusive = ra.inconclusive || (rb && rb->inconclusive);
  r.from = ra.predicate;
  if (!rb) {
    r.status = ra.status;
    r.witnesses = ra.witnesses;
    r.certificate = ra.certificate;
    return r;
  }
  if (ra.status == Status::Tractable || rb->status == Status::Tractable) {
    r.status = Status::Tractable;
    const bool via_b = ra.status != Status::Tractable;
    const auto& src = via_b ? *rb : ra;
    r.witnesses = src.witnesses;
    r.from = src.predicate;
    if (via_b) r.shift = all_ones(a.arity());
  } else if (ra.status == Status::NPHard && rb->status == Status::NPHard) {
    r.status = Status::NPHard;
    r.certificate = ra.certificate;
  } else {
    r.status = Status::Unknown;
  }
  return r;
}

}  // namespace

Sweep derive_fpcsp(const Sweep& fi) {
  if (fi.mode != Mode::FiPcsp || !fi.complete) throw std::invalid_argument("needs a complete fiPCSP sweep");
  Sweep s;
  s.k = fi.k;
  s.mode = Mode::FPcsp;
  const Point top = all_ones(fi.k);
  for (const auto& a : enumerate_canonical(fi.k, Group::PermComplement)) {
    const auto* ra = fi.find(a);
    if (!ra) throw std::logic_error("fiPCSP sweep misses " + a.to_string());
    const ClassificationRecord* rb = nullptr;
    if (!a.contains(top)) {
      rb = fi.find(xor_shift(a, top));
      if (!rb) throw std::logic_error("fiPCSP sweep misses the complement of " + a.to_string());
    }
    s.records.push_back(lift_fpcsp(a, *ra, rb));
  }
  s.complete = true;
  s.reindex();
  return s;
}

UsefulnessScreen usefulness_screen(const Predicate& a) {
  UsefulnessScreen u;
  const int k = a.arity();
  const auto pts = a.points();
  std::vector<LinearRow> rows;
  for (Point p : pts) {
    LinearRow row;
    for (int i = 1; i <= k; ++i) row.coeffs.emplace_back(2 * coord(p, i, k) - 1);
    rows.push_back(std::move(row));
  }
  if (const auto alpha = cone_nonzero_point(k, rows)) {
    Point b = 0;
    for (int i = 1; i <= k; ++i)
      if ((*alpha)[static_cast<std::size_t>(i) - 1] < 0) b |= Point{1} << (k - i);
    u.bits |= kUsefulMaj;
    u.maj_shift = b;
  }
  for (Point beta = 1; beta <= all_ones(k) && !u.par_shift; ++beta) {
    const int first = weight(pts.front() & beta) & 1;
    if (!std::all_of(pts.begin(), pts.end(), [&](Point p) { return (weight(p & beta) & 1) == first; }))
      continue;
    u.bits |= kUsefulPar;
    // Odd constant: A itself admits Par. Even: flip one coordinate of β.
    u.par_shift = first ? Point{0} : Point{1} << __builtin_ctz(beta);
  }
  for (auto b : {u.maj_shift, u.par_shift})
    if (b && a.contains(*b)) throw std::logic_error("usefulness screen shift lies in A");
  return u;
}

namespace {

ClassificationRecord usefulness_record(const Predicate& a, bool audit,
                                       const std::function<ClassificationRecord(const Predicate&)>& fi) {
  ClassificationRecord r;
  r.predicate = a;
  r.mode = Mode::Usefulness;
  const auto screen = usefulness_screen(a);
  r.family_bits = screen.bits;
  bool all_hard = true;
  for (Point b = 0; b <= all_ones(a.arity()); ++b) {
    if (a.contains(b)) continue;
    const auto rb = fi(xor_shift(a, b));
    r.inconclusive = r.inconclusive || rb.inconclusive;
    if (rb.status == Status::Tractable && r.status != Status::Useful) {
      r.status = Status::Useful;
      r.shift = b;
      r.witnesses = rb.witnesses;
      r.from = rb.predicate;
      if (!audit) break;
    }
    if (rb.status != Status::NPHard) all_hard = false;
  }
  if (r.status != Status::Useful) r.status = all_hard ? Status::Useless : Status::Unknown;
  if (screen.bits && r.status != Status::Useful)
    throw std::logic_error("usefulness screen passes but no shift is tractable: " + a.to_string());
  return r;
}

}  // namespace

Sweep derive_usefulness(const Sweep& fi, bool audit) {
  if (fi.mode != Mode::FiPcsp || !fi.complete) throw std::invalid_argument("needs a complete fiPCSP sweep");
  Sweep s;
  s.k = fi.k;
  s.mode = Mode::Usefulness;
  auto lookup = [&](const Predicate& c) {
    const auto* r = fi.find(c);
    if (!r) throw std::logic_error("fiPCSP sweep misses " + c.to_string());
    return *r;
  };
  for (const auto& a : enumerate_canonical(fi.k, Group::PermShift))
    s.records.push_back(usefulness_record(a, audit, lookup));
  s.complete = true;
  s.reindex();
  return s;
}

ClassificationRecord classify_fpcsp(const Predicate& a, const HardnessBudgets& b) {
  if (a.contains_zero()) throw std::invalid_argument("fPCSP predicate must exclude 0^k");
  const Point top = all_ones(a.arity());
  const auto ra = classify_promise_sat(canonical_form(a, Group::Perm), b);
  auto r = a.contains(top)
               ? lift_fpcsp(a, ra, nullptr)
               : [&] {
                   const auto rb = classify_promise_sat(canonical_form(xor_shift(a, top), Group::Perm), b);
                   return lift_fpcsp(a, ra, &rb);
                 }();
  r.predicate = canonical_form(a, Group::PermComplement);
  return r;
}

ClassificationRecord classify_usefulness(const Predicate& a, const HardnessBudgets& b) {
  std::map<Mask, ClassificationRecord> memo;
  auto fi = [&](const Predicate& c) {
    const auto key = canonical_form(c, Group::Perm);
    auto it = memo.find(key.mask());
    if (it == memo.end()) it = memo.emplace(key.mask(), classify_promise_sat(key, b)).first;
    return it->second;
  };
  return usefulness_record(canonical_form(a, Group::PermShift), false, fi);
}

Extremal minimal_maximal(const Sweep& s) {
  if (!s.complete) throw std::invalid_argument("extremal tables need a complete sweep");
  const Group g = group_for(s.mode);
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    if (positive(s.records[i].status)) pos.push_back(i);
    if (negative(s.records[i].status)) neg.push_back(i);
  }
  std::vector<std::vector<Mask>> orb(s.records.size());
  for (std::size_t i = 0; i < s.records.size(); ++i) orb[i] = orbit(s.records[i].predicate, g);
  auto below = [&](std::size_t x, std::size_t y) {  // some orbit member of x ⊆ y
    return s.records[x].predicate.size() <= s.records[y].predicate.size() &&
           orbit_subset(orb[x], s.records[y].predicate.mask());
  };
  auto strictly_below = [&](std::size_t x, std::size_t y) {
    return s.records[x].predicate.size() < s.records[y].predicate.size() && below(x, y);
  };

  Extremal e;
  // Maximal positive: nothing positive strictly above.
  std::vector<std::size_t> maxi, mini;
  for (std::size_t i : pos)
    if (std::none_of(pos.begin(), pos.end(), [&](std::size_t j) { return strictly_below(i, j); }))
      maxi.push_back(i);
  for (std::size_t i : neg)
    if (std::none_of(neg.begin(), neg.end(), [&](std::size_t j) { return strictly_below(j, i); }))
      mini.push_back(i);

  auto marks = [&](const ClassificationRecord& r) {
    return r.status == Status::NPHard ? r.theorem_bits : r.family_bits;
  };
  for (std::size_t m : maxi) {
    ExtremalRow row{s.records[m].predicate, marks(s.records[m]), 0, 0};
    for (std::size_t b : pos) {
      if (!below(b, m)) continue;
      ++row.total;
      if (std::none_of(maxi.begin(), maxi.end(), [&](std::size_t o) { return o != m && below(b, o); }))
        ++row.exclusive;
    }
    e.maximal_positive.push_back(row);
  }
  for (std::size_t m : mini) {
    ExtremalRow row{s.records[m].predicate, marks(s.records[m]), 0, 0};
    for (std::size_t b : neg) {
      if (!below(m, b)) continue;
      ++row.total;
      if (std::none_of(mini.begin(), mini.end(), [&](std::size_t o) { return o != m && below(o, b); }))
        ++row.exclusive;
    }
    e.minimal_negative.push_back(row);
  }
  return e;
}

PolymorphismQuery non_dictator_query(const Predicate& a, int arity) {
  PolymorphismQuery q;
  q.predicate = a;
  q.arity = arity;
  q.folded = true;
  q.idempotent = true;
  for (int i = 1; i <= arity; ++i) q.excluded.push_back(make_dictator(arity, i));
  q.label = "non-dictator";
  return q;
}

std::vector<RandomStats> random_experiment(const RandomConfig& cfg) {
  if (cfg.k < 2 || cfg.k > 6) throw std::invalid_argument("random harness supports 2 <= k <= 6");
  struct Memo {
    QueryStatus status;
    bool screened;
  };
  std::map<Mask, Memo> memo;
  std::vector<RandomStats> out;
  for (double p : cfg.densities) out.push_back(RandomStats{p, 0, 0, 0, 0, 0, {}});
  std::mt19937_64 rng(cfg.seed);
  const Point n = Point{1} << cfg.k;
  for (int s = 0; s < cfg.samples; ++s) {
    std::vector<double> u(n, 1.0);
    for (Point x = 1; x < n; ++x) u[x] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    for (std::size_t d = 0; d < cfg.densities.size(); ++d) {
      auto& st = out[d];
      ++st.samples;
      std::vector<Point> pts;
      for (Point x = 1; x < n; ++x)
        if (u[x] < cfg.densities[d]) pts.push_back(x);
      RandomVerdict v;
      if (pts.empty()) {
        ++st.empty;
        st.verdicts.push_back(v);
        continue;
      }
      const auto sample = Predicate::from_points(cfg.k, pts);
      const auto a = canonical_form(sample, Group::Perm);
      auto it = memo.find(a.mask());
      if (it == memo.end()) {
        const auto r = exists_polymorphism(non_dictator_query(a), cfg.engine);
        it = memo.emplace(a.mask(), Memo{r.status, five_family_screen(a).tractable()}).first;
      }
      v.predicate = sample;
      v.non_dictator = it->second.status;
      v.screened = it->second.screened;
      if (v.non_dictator == QueryStatus::Present) ++st.non_dictator;
      if (v.non_dictator == QueryStatus::Inconclusive) ++st.inconclusive;
      if (v.screened) ++st.screened;
      st.verdicts.push_back(v);
    }
  }
  return out;
}

std::string random_json(const RandomConfig& cfg, const std::vector<RandomStats>& stats) {
  nlohmann::json j;
  j["arity"] = cfg.k;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  auto& arr = j["densities"] = nlohmann::json::array();
  for (const auto& st : stats) {
    nlohmann::json d;
    d["p"] = st.p;
    d["samples"] = st.samples;
    d["empty"] = st.empty;
    d["non_dictator"] = st.non_dictator;
    d["screened"] = st.screened;
    d["inconclusive"] = st.inconclusive;
    const int nonempty = st.samples - st.empty;
    d["non_dictator_fraction"] = nonempty ? static_cast<double>(st.non_dictator) / nonempty : 0.0;
    d["screened_fraction"] = nonempty ? static_cast<double>(st.screened) / nonempty : 0.0;
    auto& vs = d["verdicts"] = nlohmann::json::array();
    for (const auto& v : st.verdicts) {
      nlohmann::json e;
      if (!v.predicate) {
        e["predicate"] = nullptr;
      } else {
        e["predicate"] = v.predicate->id_hex();
        e["size"] = v.predicate->size();
        e["non_dictator"] = status_name(v.non_dictator);
        e["screened"] = v.screened;
      }
      vs.push_back(e);
    }
    arr.push_back(d);
  }
  return j.dump();
}

}  // namespace psat

namespace psat {

std::string ColumnAudit::json() const {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < names.size(); ++i)
    j[names[i]] = {{"exclusive", exclusive[i]}, {"total", total[i]}};
  return j.dump();
}

namespace {

ColumnAudit tally(std::vector<std::string> names, const std::vector<unsigned>& marks) {
  ColumnAudit a;
  a.exclusive.assign(names.size(), 0);
  a.total.assign(names.size(), 0);
  for (unsigned m : marks)
    for (std::size_t i = 0; i < names.size(); ++i)
      if ((m >> i) & 1u) {
        ++a.total[i];
        if (m == (1u << i)) ++a.exclusive[i];
      }
  a.names = std::move(names);
  return a;
}

}  // namespace

ColumnAudit family_audit(const Sweep& s) {
  if (s.mode != Mode::FiPcsp) throw std::invalid_argument("family audit needs a fiPCSP sweep");
  std::vector<unsigned> marks;
  for (const auto& r : s.records)
    if (r.status == Status::Tractable) marks.push_back(r.family_bits);
  std::vector<std::string> names;
  for (Family f : kScreenFamilies) names.emplace_back(family_name(f));
  return tally(std::move(names), marks);
}

ColumnAudit hardness_audit(const Sweep& s) {
  if (s.mode != Mode::FiPcsp) throw std::invalid_argument("hardness audit needs a fiPCSP sweep");
  std::vector<unsigned> marks;
  for (const auto& r : s.records) {
    if (r.status != Status::NPHard) continue;
    if (!r.theorems_complete) throw std::invalid_argument("hardness audit needs an audit sweep");
    marks.push_back(r.theorem_bits);
  }
  std::vector<std::string> names;
  for (Theorem t : kTheorems) names.emplace_back(theorem_name(t));
  return tally(std::move(names), marks);
}

}  // namespace psat
