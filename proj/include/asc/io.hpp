#pragma once

#include "asc/dataset.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace asc {

/// Loads a numeric feature CSV: header `id,<feature...>`, one row per sample.
NumericDataset load_numeric_csv(const std::string& path);

/// Loads sparse `doc_id,term_index,count` triplets against a one-term-per-line
/// lexicon. doc_id is matched against `sample_ids`; a bare integer doc_id is
/// also accepted as a 0-based row index.
TextDataset load_term_frequency(const std::string& matrix_path,
                                const std::string& lexicon_path,
                                const std::vector<std::string>& sample_ids);

/// Same, with anonymous samples "0".."n-1".
TextDataset load_term_frequency(const std::string& matrix_path,
                                const std::string& lexicon_path, int n);

/// Loads a JSON object {"must_link": [...], "cannot_link": [...]} and validates it.
ConstraintSets load_constraints(const std::string& path, int n);

void save_numeric_csv(const NumericDataset& data, const std::string& path);
void save_term_frequency(const TextDataset& data, const std::string& path);
void save_lexicon(const TextDataset& data, const std::string& path);
void save_constraints(const ConstraintSets& c, const std::string& path);
void save_labels_csv(const std::vector<std::string>& ids,
                     const std::vector<int>& labels, const std::string& path);
std::vector<int> load_labels_csv(const std::string& path);

/// Dense CSV without header, one row per line.
void save_matrix_csv(const Eigen::MatrixXd& m, const std::string& path);
Eigen::MatrixXd load_matrix_csv(const std::string& path);

/// Compact cache format: 8-byte little-endian row count, then row-major doubles
/// (column count inferred; square for similarity matrices).
void save_matrix_binary(const Eigen::MatrixXd& m, const std::string& path);
Eigen::MatrixXd load_matrix_binary(const std::string& path);

/// Shortest round-trippable decimal rendering, used by every CSV writer so
/// repeated runs stay byte-identical.
std::string format_double(double v);

} // namespace asc
