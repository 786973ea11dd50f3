#include "qpencil/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace qpencil::io {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(trim(field));
  return out;
}

double parse_double(const std::string& token) {
  std::size_t pos = 0;
  const double v = std::stod(token, &pos);
  if (pos != token.size())
    throw ValidityError("malformed numeric token '" + token + "'");
  return v;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidityError("cannot open file: " + path);
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex(const std::complex<double>& v) {
  if (v.imag() == 0.0) return format_double(v.real());
  std::string out = format_double(v.real());
  if (v.imag() >= 0.0) out += "+";
  out += format_double(v.imag()) + "i";
  return out;
}

std::complex<double> parse_complex(const std::string& raw) {
  const std::string token = trim(raw);
  if (token.empty()) throw ValidityError("empty complex token");
  if (token.back() != 'i' && token.back() != 'I')
    return {parse_double(token), 0.0};

  std::string body = token.substr(0, token.size() - 1);
  // Split at the last +/- that is not a leading sign or an exponent sign.
  std::size_t cut = std::string::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    const char c = body[p];
    if ((c == '+' || c == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      cut = p;
      break;
    }
  }
  if (cut == std::string::npos) {
    if (body.empty() || body == "+" || body == "-") body += "1";
    return {0.0, parse_double(body)};
  }
  std::string imag = body.substr(cut);
  if (imag == "+" || imag == "-") imag += "1";
  return {parse_double(body.substr(0, cut)), parse_double(imag)};
}

pauli::PauliSum read_pauli_text(std::istream& in) {
  pauli::PauliSum sum;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string coeff_tok, letters;
    if (!(is >> coeff_tok >> letters))
      throw ValidityError("malformed Pauli line: '" + line + "'");
    std::string extra;
    if (is >> extra)
      throw ValidityError("trailing content on Pauli line: '" + line + "'");
    sum.add_term(parse_double(coeff_tok), letters);
  }
  if (sum.terms.empty()) throw ValidityError("Pauli file contains no terms");
  return sum;
}

pauli::PauliSum read_pauli_text_file(const std::string& path) {
  auto in = open_input(path);
  return read_pauli_text(in);
}

std::string format_pauli_text(const pauli::PauliSum& p) {
  std::string out;
  for (const auto& t : p.terms) {
    if (std::abs(t.coeff.imag()) > 1e-12)
      throw ValidityError("text format stores real coefficients only");
    out += format_double(t.coeff.real()) + " " + t.string.to_string() + "\n";
  }
  return out;
}

Eigen::MatrixXcd read_complex_csv(std::istream& in) {
  std::vector<std::vector<std::complex<double>>> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::complex<double>> row;
    for (const auto& tok : split(line, ',')) row.push_back(parse_complex(tok));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ValidityError("ragged CSV row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidityError("CSV contains no data");
  Eigen::MatrixXcd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

Eigen::MatrixXcd read_complex_csv_file(const std::string& path) {
  auto in = open_input(path);
  return read_complex_csv(in);
}

std::string format_complex_csv(const Eigen::MatrixXcd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += format_complex(m(i, j));
    }
    out += "\n";
  }
  return out;
}

manifold::Dataset read_dataset_csv(std::istream& in, bool has_labels,
                                   bool has_header) {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::string line;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.empty()) continue;
    const std::size_t feature_count = fields.size() - (has_labels ? 1 : 0);
    if (feature_count < 1) throw ValidityError("dataset row has no features");
    std::vector<double> row;
    row.reserve(feature_count);
    for (std::size_t j = 0; j < feature_count; ++j)
      row.push_back(parse_double(fields[j]));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ValidityError("ragged dataset row");
    rows.push_back(std::move(row));
    if (has_labels) {
      const double raw = parse_double(fields.back());
      const int label = static_cast<int>(raw);
      if (static_cast<double>(label) != raw)
        throw ValidityError("label column must hold integers");
      labels.push_back(label);
    }
  }
  if (rows.empty()) throw ValidityError("dataset contains no points");

  manifold::Dataset data;
  const auto d = static_cast<Eigen::Index>(rows.front().size());
  const auto m = static_cast<Eigen::Index>(rows.size());
  data.x.resize(d, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      data.x(j, i) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  if (has_labels) {
    data.labels = Eigen::VectorXi(m);
    for (Eigen::Index i = 0; i < m; ++i)
      (*data.labels)(i) = labels[static_cast<std::size_t>(i)];
  }
  return data;
}

manifold::Dataset read_dataset_csv_file(const std::string& path, bool has_labels,
                                        bool has_header) {
  auto in = open_input(path);
  return read_dataset_csv(in, has_labels, has_header);
}

Eigen::MatrixXd read_real_csv(std::istream& in) {
  const Eigen::MatrixXcd m = read_complex_csv(in);
  if (m.imag().cwiseAbs().maxCoeff() > 0.0)
    throw ValidityError("expected a real-valued CSV");
  return m.real();
}

Eigen::MatrixXd read_real_csv_file(const std::string& path) {
  auto in = open_input(path);
  return read_real_csv(in);
}

std::string format_real_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += format_double(m(i, j));
    }
    out += "\n";
  }
  return out;
}

std::string format_labels_csv(const Eigen::VectorXi& labels) {
  std::string out;
  for (Eigen::Index i = 0; i < labels.size(); ++i)
    out += std::to_string(labels(i)) + "\n";
  return out;
}

std::string format_scan_csv(const vqge::ScanResult& scan) {
  std::string out = "tau,min_cost\n";
  for (Eigen::Index i = 0; i < scan.tau_grid.size(); ++i)
    out += format_double(scan.tau_grid(i)) + "," + format_double(scan.min_cost(i)) + "\n";
  return out;
}

std::string format_state_csv(const sim::Statevector& state) {
  std::string out = "re,im\n";
  for (Eigen::Index i = 0; i < state.amplitudes().size(); ++i)
    out += format_double(state.amplitudes()(i).real()) + "," +
           format_double(state.amplitudes()(i).imag()) + "\n";
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidityError("cannot open file for writing: " + tmp.string());
    out << content;
    if (!out.flush()) throw ValidityError("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace qpencil::io
