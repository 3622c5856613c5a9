#ifndef RIPLAB_REPORT_HPP
#define RIPLAB_REPORT_HPP

#include <nlohmann/json.hpp>

#include "riplab/lpaudit.hpp"
#include "riplab/ripcert.hpp"
#include "riplab/witness.hpp"

namespace riplab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "riplab 0.1.0";

// FNV-1a 64 over the canonical matrix byte serialization: rows, cols as
// little-endian int64, then entries row-major as little-endian IEEE doubles.
inline std::uint64_t matrix_digest(const Matrix& a) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  const auto feed = [&hash](const void* bytes, std::size_t len) {
    const auto* ptr = static_cast<const unsigned char*>(bytes);
    for (std::size_t i = 0; i < len; ++i) {
      hash ^= ptr[i];
      hash *= 0x00000100000001B3ULL;
    }
  };
  const std::int64_t rows = a.rows(), cols = a.cols();
  feed(&rows, sizeof(rows));
  feed(&cols, sizeof(cols));
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      const double v = a(i, j);
      feed(&v, sizeof(v));
    }
  }
  return hash;
}

inline Json to_json(const IndexSet& set) {
  Json arr = Json::array();
  for (Index i : set) arr.push_back(i);
  return arr;
}

inline Json to_json(const RipEstimate& est) {
  return Json{{"p", est.p},
              {"k", est.k},
              {"mode", est.mode == RipMode::exact ? "exact" : "sampled"},
              {"minRatio", est.min_ratio},
              {"maxRatio", est.max_ratio},
              {"ratioBound", est.ratio_bound},
              {"probes", est.probes},
              {"seed", est.seed},
              {"notRip", est.not_rip}};
}

inline Json to_json(const WitnessReport& report) {
  return Json{{"iKer", report.i_ker},
              {"t", report.t},
              {"l1", report.l1},
              {"l2", report.l2},
              {"imageL2", report.image_l2},
              {"delta12", report.delta12},
              {"alpha", report.alpha},
              {"opNormB", report.op_norm_b},
              {"impliedDLower", report.implied_d_lower},
              {"normalizationFactor", report.normalization_factor}};
}

inline Json to_json(const BasicBoundsReport& report) {
  const auto violations = [](const std::vector<BoundViolation>& list) {
    Json arr = Json::array();
    for (const auto& v : list) {
      arr.push_back({{"index", v.index}, {"norm", v.norm}, {"bound", v.bound}});
    }
    return arr;
  };
  return Json{{"normalizationFactor", report.normalization_factor},
              {"rowBound", report.row_bound},
              {"colBound", report.col_bound},
              {"rowViolations", violations(report.row_violations)},
              {"colViolations", violations(report.col_violations)},
              {"passed", report.passed()}};
}

inline Json to_json(const RowNormAudit& audit) {
  return Json{{"p", audit.p},
              {"k", audit.k},
              {"D", audit.big_d},
              {"sumL2p", audit.sum_l2p},
              {"sumLpp", audit.sum_lpp},
              {"lhs", audit.lhs},
              {"rhs", audit.rhs},
              {"slack", audit.slack},
              {"impliedDLower", audit.implied_d_lower},
              {"trivial", audit.trivial}};
}

inline Json to_json(const DenseCore& core) {
  return Json{{"rowCount", core.row_count},
              {"minRowCount", core.min_row_count},
              {"frobFraction", core.frob_fraction},
              {"maxRowDelta12", core.max_row_delta12},
              {"rowIndices", to_json(core.row_indices)},
              {"removedCols", to_json(core.removed_cols)},
              {"k", core.k},
              {"D", core.big_d},
              {"eta", core.eta},
              {"kprime", core.kprime},
              {"delta", core.delta},
              {"alpha", core.alpha},
              {"kEst", core.k_est},
              {"impliedDLowerS", core.implied_d_lower_s},
              {"chainValue", core.chain_value},
              {"windowLowOk", core.window_low_ok},
              {"windowHighOk", core.window_high_ok},
              {"verdict",
               core.verdict == CoreVerdict::consistent ? "consistent" : "refutation_evidence"},
              {"notes", core.notes}};
}

inline Json make_audit_report(const std::string& command, std::uint64_t input_digest,
                              Json parameters, Json results, const std::string& verdict,
                              double elapsed_seconds) {
  return Json{{"toolVersion", kToolVersion},
              {"command", command},
              {"inputDigest", input_digest},
              {"parameters", std::move(parameters)},
              {"results", std::move(results)},
              {"verdict", verdict},
              {"timings", Json{{"elapsedSeconds", elapsed_seconds}}}};
}

}  // namespace riplab

#endif  // RIPLAB_REPORT_HPP
