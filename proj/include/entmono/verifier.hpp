#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entmono/locc.hpp"
#include "entmono/measures.hpp"
#include "entmono/random.hpp"
#include "entmono/state.hpp"

namespace entmono {

enum class Method { ClosedForm, Roof, Ree };

std::string to_string(Method method);

/// Default tolerance of a monotonicity comparison for values produced by
/// `method`: 1e-9 closed form, 2e-3 convex roof, 2e-2 relative entropy.
double method_tolerance(Method method);

struct EvalOptions {
  /// Allows the convex-roof and relative-entropy optimizers. Without it,
  /// mixed states that need one are reported as unavailable.
  bool optimize = false;
  int roof_restarts = 8;
  int ree_iterations = 2000;
  int ree_restarts = 8;
};

struct Evaluation {
  double value = 0.0;  // nats for log-based measures, log2 for log-negativity
  Method method = Method::ClosedForm;
};

/// A measure identified by its id string:
///   eof, concurrence, g-concurrence, tangle, negativity, negativity-roof,
///   log-negativity, renyi:<alpha>, tsallis:<q>, ree
class Measure {
 public:
  enum class Kind { Eof, Concurrence, GConcurrence, Tangle, Negativity, NegativityRoof, LogNegativity, Renyi, Tsallis, Ree };

  /// Throws ParameterError for unknown ids or invalid parameters.
  static Measure parse(const std::string& id);
  static std::vector<std::string> known_ids();

  Kind kind() const { return kind_; }
  const std::string& id() const { return id_; }
  /// Values are natural-log based and change under --base bits.
  bool log_based() const;
  /// The h-function of the measure on pure states. For log-negativity this is
  /// the Renyi-1/2 entropy, which equals ln 2 times E_N on pure states.
  HFunction h() const;
  /// Method that evaluate() would use on rho.
  Method method_for(const DensityMatrix& rho) const;
  /// Throws DimensionError for tripartite states, or ree beyond dA*dB = 16.
  std::optional<Evaluation> evaluate(const DensityMatrix& rho, Rng& rng, const EvalOptions& options = {}) const;

 private:
  Measure(Kind kind, double parameter, std::string id) : kind_(kind), parameter_(parameter), id_(std::move(id)) {}
  Kind kind_;
  double parameter_;
  std::string id_;
};

/// Rank-one test used to route states to the pure-state formulas.
std::optional<PureState> as_pure(const DensityMatrix& rho);

enum class Verdict { Pass, Fail, Skipped };
std::string to_string(Verdict verdict);
Verdict verdict_from_string(const std::string& s);

/// Verdict rules, stored in metadata["rule"]:
///   "gap>=-tol"                  monotone inequality
///   "gap>tol"                    strict decrease
///   "gap>tol|uninformative"      strict decrease, or lhs <= 1e-12
///   "|gap|<tol"                  equality
///   "|gap|<=tol"                 equality, inclusive
///   "gap>tol&subchecks", "|gap|<tol&subchecks", "gap>=-tol&subchecks"
///                                rule plus metadata["subchecks"] == "pass"
///   "skip"                       never evaluated
struct VerificationReport {
  std::string check_id;
  std::string measure_id;
  std::optional<ChannelClass::Tag> channel_class;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Skipped;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> metadata;
};

/// Recomputes the verdict from lhs, rhs, tolerance and the stored rule.
Verdict recompute_verdict(const VerificationReport& report);

inline constexpr double kStrictFloor = 1e-6;
inline constexpr double kUninformative = 1e-12;

/// E(rho) >= sum_k p_k E(sigma_k). `tolerance` overrides the method default.
VerificationReport check_monotone(const Measure& measure, const DensityMatrix& rho, const LocalKrausChannel& channel,
                                  Rng& rng, const EvalOptions& options = {},
                                  std::optional<double> tolerance = std::nullopt);

using StateSampler = std::function<DensityMatrix(Rng&)>;

/// General channels: pass iff the largest gap over n_states samples exceeds
/// the strict floor. Unitary mixtures: pass iff every |gap| < 1e-9. States
/// needing an optimizer are excluded, since its noise exceeds the floor.
VerificationReport check_strict(const Measure& measure, const StateSampler& sampler, const LocalKrausChannel& channel,
                                int n_states, Rng& rng, std::optional<double> tolerance = std::nullopt);

/// gap = h(l rho1 + (1-l) rho2) - l h(rho1) - (1-l) h(rho2) for single-factor
/// states. Pass iff gap > 0 when ||rho1 - rho2||_F > 1e-3 (full rank required
/// for g-concurrence), |gap| <= 1e-10 when the states coincide; skipped
/// otherwise.
VerificationReport check_strict_concavity(const HFunction& h, const DensityMatrix& rho1, const DensityMatrix& rho2,
                                          double lambda);

/// Pure input, side-B channel. If some outcome's reduced state on A moves by
/// more than 1e-6, pass iff gap > 1e-9; if none moves by more than 1e-8, pass
/// iff |gap| < 1e-8; skipped in between.
VerificationReport check_reduced_state_condition(const HFunction& h, const PureState& psi,
                                                 const LocalKrausChannel& channel);

/// Assembles |phi>_{AB1} |eta>_{B2C} with B = B1 B2 and checks
/// E(A|BC) = E(AB), that rho^{AC} is a product state, and that measuring C in
/// its computational basis leaves rho^A unchanged.
VerificationReport check_monogamy_product(const PureState& phi_ab1, const PureState& eta_b2c, const HFunction& h);

/// Jordan decomposition rho^{T_A} = (1 + a) rho+ - a rho-. Skipped for PPT
/// input.
VerificationReport check_negativity_decomposition(const DensityMatrix& rho);

/// Random search for lambda, rho1, rho2 with
/// E_N(mix) > l E_N(rho1) + (1-l) E_N(rho2) + 1e-6. The same trials are used
/// as a control on the convexity of the negativity.
VerificationReport check_logneg_nonconvexity(Rng& rng, int max_trials = 10000, const Dims& dims = Dims(2, 2));

/// sum_i S(p_i rho_i || q_i sigma_i) <= S(rho || sigma) + 1e-9 for a shared
/// channel, and max |p_i - q_i| < 1e-6 whenever the gap is below 1e-9.
VerificationReport check_ree_data_processing(const DensityMatrix& rho, const DensityMatrix& sigma,
                                             const LocalKrausChannel& channel,
                                             std::optional<double> tolerance = std::nullopt);

enum class Base { Nats, Bits };
Base base_from_string(const std::string& s);
std::string to_string(Base base);

struct SweepConfig {
  std::vector<std::string> checks;
  std::vector<std::string> measures;
  std::vector<std::pair<int, int>> dims;
  int trials = 200;
  /// Kraus operators per random channel; 0 draws 2 to 4 per trial.
  int n_kraus = 0;
  std::uint64_t seed = 0;
  std::string output_path = "entmono_report";
  Base base = Base::Nats;
  bool optimize = false;
  /// Samples per channel in the strictness checks.
  int states_per_channel = 100;
  /// Per-check tolerance overrides, keyed by check id.
  std::map<std::string, double> tolerances;

  static SweepConfig defaults();
  /// Throws ParameterError on unknown ids or out-of-range values.
  void validate() const;
};

std::vector<std::string> known_check_ids();

/// Deterministic given the config. Reports are ordered by check, dims,
/// measure and trial index.
std::vector<VerificationReport> run_sweep(const SweepConfig& config);

/// Rescales lhs, rhs, gap and tolerance of log-based reports to bits.
void convert_base(VerificationReport& report, Base base);

struct SummaryRow {
  std::string check_id;
  std::string measure_id;
  int trials = 0;
  int passes = 0;
  int failures = 0;
  double min_gap = 0.0;
  double mean_gap = 0.0;
  double max_gap = 0.0;
  int evaluated = 0;  // non-skipped reports entering the gap statistics
};

std::vector<SummaryRow> summarize(const std::vector<VerificationReport>& reports);

std::string to_json_line(const VerificationReport& report);
VerificationReport report_from_json_line(const std::string& line);
std::string summary_csv(const std::vector<SummaryRow>& rows);
void write_reports(const std::string& path, const std::vector<VerificationReport>& reports);

}  // namespace entmono
