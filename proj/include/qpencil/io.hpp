#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include "qpencil/manifold.hpp"
#include "qpencil/pauli.hpp"
#include "qpencil/sim.hpp"
#include "qpencil/vqge.hpp"

// On-disk formats: Pauli sums as text, dense matrices and datasets as CSV,
// scan curves as CSV. Writers go through a temp-file-plus-rename so partial
// artifacts never appear under the final name.
namespace qpencil::io {

// One term per line: "<real-coeff> <letters>", '#' starts a comment.
pauli::PauliSum read_pauli_text(std::istream& in);
pauli::PauliSum read_pauli_text_file(const std::string& path);
std::string format_pauli_text(const pauli::PauliSum& p);

// CSV of matrix rows; complex entries as "a+bi" tokens (plain reals accepted).
Eigen::MatrixXcd read_complex_csv(std::istream& in);
Eigen::MatrixXcd read_complex_csv_file(const std::string& path);
std::string format_complex_csv(const Eigen::MatrixXcd& m);

// Dataset CSV: one point per row, optional trailing integer label column,
// optional header row.
manifold::Dataset read_dataset_csv(std::istream& in, bool has_labels,
                                   bool has_header);
manifold::Dataset read_dataset_csv_file(const std::string& path, bool has_labels,
                                        bool has_header);

// Real matrices as plain CSV rows (projections are stored D x d; embeddings
// are written one point per row, matching the dataset layout).
Eigen::MatrixXd read_real_csv(std::istream& in);
Eigen::MatrixXd read_real_csv_file(const std::string& path);
std::string format_real_csv(const Eigen::MatrixXd& m);

std::string format_labels_csv(const Eigen::VectorXi& labels);

// Header "tau,min_cost", one grid point per line.
std::string format_scan_csv(const vqge::ScanResult& scan);

// Amplitude dump: one "re,im" row per amplitude.
std::string format_state_csv(const sim::Statevector& state);

// Full-precision decimal formatting used by every writer.
std::string format_double(double v);
std::string format_complex(const std::complex<double>& v);
std::complex<double> parse_complex(const std::string& token);

// Atomic write: temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace qpencil::io
