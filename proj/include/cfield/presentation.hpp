#pragma once

// Stage-based presentations of growing fields. The domain is an initial
// segment of the natural numbers: labels are handed out in discovery order,
// and "lesser" always means "smaller label".

#include "cfield/field_poly.hpp"
#include "cfield/number_field.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cfield {

/// A finite approximation of a c.e. set: members with the stage at which
/// they were enumerated. An index i may only enter at a stage s >= i.
class EnumeratedSet {
 public:
  EnumeratedSet() = default;
  explicit EnumeratedSet(std::string name) : name_(std::move(name)) {}
  /// Members enumerated at stage max(i, first_stage) in increasing order.
  static EnumeratedSet from_indices(std::string name, const std::vector<int>& indices, int first_stage = 1);

  const std::string& name() const { return name_; }
  void add(int i, int stage);
  bool contains(int i) const;
  bool contains_by(int i, int stage) const;
  std::optional<int> entry_stage(int i) const;
  const std::vector<std::pair<int, int>>& members() const { return members_; }
  std::set<int> indices() const;

 private:
  std::string name_;
  std::vector<std::pair<int, int>> members_;  // (i, stage)
};

struct ScheduleEvent {
  enum class Kind { Adjoin, Enumerate };
  int stage = 0;
  Kind kind = Kind::Enumerate;
  std::string set;                 // enumerate: set name
  int index = -1;                  // enumerate: the member
  std::string poly;                // adjoin: polynomial in x over the current labels
  std::vector<std::string> names;  // adjoin: optional names for the new labels
};

/// kind is "FW" (set W), "FPN" (sets P and N) or "custom" (adjoin events).
struct StageSchedule {
  std::string kind = "custom";
  std::vector<long> primes;
  std::vector<ScheduleEvent> events;

  /// Throws AlgebraError when stages are not positive and nondecreasing, an index
  /// exceeds its stage or the prime list, or P and N overlap.
  void validate() const;
  int last_stage() const { return events.empty() ? 0 : events.back().stage; }
};

/// Deterministic relabelling for building differently presented copies:
/// the order in which primes are adjoined at stage 0 and the order in
/// which each batch of new elements receives labels.
struct PresentationOptions {
  std::uint64_t scramble_seed = 0;  // 0 keeps canonical order
};

class FieldPresentation {
 public:
  struct Snapshot {
    int stage;
    FieldPtr field;
    FieldEmbedding into_current;
  };

  /// Starts from Q at stage 0 with no labels.
  explicit FieldPresentation(PresentationOptions opts = {});

  const FieldPtr& field() const { return field_; }
  std::size_t size() const { return labels_.size(); }
  const FieldElement& element(std::size_t label) const;
  const std::vector<FieldElement>& elements() const { return labels_; }
  int label_stage(std::size_t label) const { return label_stage_.at(label); }
  const std::string& name(std::size_t label) const { return names_.at(label); }
  std::optional<std::size_t> label_of(const FieldElement& x) const;
  std::optional<std::size_t> label_of(const std::string& name) const;
  /// Presentation order: labelled elements by label, then unlabelled ones
  /// in canonical order.
  bool less(const FieldElement& a, const FieldElement& b) const;

  int stage() const { return stage_; }
  /// Whether the schedule has events beyond the built horizon.
  bool pending() const { return pending_; }
  const std::vector<Snapshot>& snapshots() const { return snapshots_; }
  const StageSchedule& schedule() const { return schedule_; }
  const PresentationOptions& options() const { return opts_; }

  const std::vector<long>& primes() const { return primes_; }
  /// The lesser-labelled square root of the i-th prime.
  const FieldElement& sqrt_prime(std::size_t i) const;
  /// Label of the adjoined square root of +-sqrt(p_i), if any.
  std::optional<std::size_t> deep_root(std::size_t i) const;
  const std::map<std::string, EnumeratedSet>& sets() const { return sets_; }

  /// Least-labelled square root of a (canonical least if none is labelled).
  FieldElement designated_sqrt(const FieldElement& a) const;
  /// Parses an element or polynomial over the current field; names are
  /// label names, "z<k>" for label k, and sqrt(...).
  FieldElement parse_element(const std::string& text) const;
  FieldPoly parse_poly(const std::string& text) const;

  /// Adjoins a root of p (over the current field) at the given stage and
  /// labels the roots of p that are new. Returns the first new label.
  std::size_t adjoin(const FieldPoly& p, int stage, const std::vector<std::string>& names = {});

  friend FieldPresentation build_from_schedule(const StageSchedule&, int, const PresentationOptions&);
  friend FieldPresentation present_field(const FieldPtr& f);

 private:
  void relabel_through(const FieldEmbedding& e);
  void snapshot(int stage);
  std::vector<std::size_t> batch_order(std::size_t n);

  PresentationOptions opts_;
  std::uint64_t rng_state_;
  FieldPtr field_;
  std::vector<FieldElement> labels_;
  std::vector<int> label_stage_;
  std::vector<std::string> names_;
  std::vector<Snapshot> snapshots_;
  int stage_ = 0;
  bool pending_ = false;
  StageSchedule schedule_;
  std::vector<long> primes_;
  std::vector<std::size_t> sqrt_label_;
  std::map<std::size_t, std::size_t> deep_root_;
  std::map<std::string, EnumeratedSet> sets_;
};

/// Builds the presentation up to the horizon. FW and FPN start with the
/// square roots of all listed primes at stage 0; an i enumerated into W or
/// P adjoins a square root of sqrt(p_i), into N one of -sqrt(p_i).
FieldPresentation build_from_schedule(const StageSchedule& schedule, int horizon, const PresentationOptions& opts = {});
FieldPresentation build_fw(const std::vector<long>& primes, const EnumeratedSet& w, int horizon,
                           const PresentationOptions& opts = {});
FieldPresentation build_fpn(const std::vector<long>& primes, const EnumeratedSet& p, const EnumeratedSet& n,
                            int horizon, const PresentationOptions& opts = {});
/// Presentation of an existing field: the Q-conjugates of each tower
/// generator (or of theta) form one batch each, in canonical order.
FieldPresentation present_field(const FieldPtr& f);

enum class QueryKind { Splitting, RootExists, RootCount, RootCountMult, ConjugacyH };

struct QueryResult {
  long value = 0;  // booleans as 0/1
  int stage = 0;
  bool provisional = false;  // a later stage of the schedule could change it
};

QueryResult invariant_query(const FieldPresentation& f, QueryKind kind, const FieldPoly& p);
/// ConjugacyH: number of Q-conjugates of x in the field.
QueryResult invariant_query(const FieldPresentation& f, QueryKind kind, const FieldElement& x);

class SeparatorError : public AlgebraError {
 public:
  SeparatorError(int index, const std::string& what) : AlgebraError(what), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

/// C = { i : g(sqrt p_i) < g(-sqrt p_i) } in the codomain's label order.
std::set<int> extract_separator(const FieldEmbedding& g, const FieldPresentation& from, const FieldPresentation& to);

/// The isomorphism sending sqrt(p_i) to the lesser square root of p_i in
/// the target when i is in C and to the greater one otherwise, extended to
/// the adjoined deeper roots. Throws SeparatorError naming the first index
/// whose deeper root has no image.
FieldEmbedding separator_isomorphism(const FieldPresentation& from, const FieldPresentation& to, const std::set<int>& c);

}  // namespace cfield
