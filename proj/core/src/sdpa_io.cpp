#include "freecert/sdpa_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace freecert {

namespace {

// Real view of one block: plain real part for real data; the writer refuses
// blocks with imaginary content (callers embed first if they need that).
Eigen::MatrixXd real_view(const Mat& m, int dim) {
  if (m.size() == 0) return Eigen::MatrixXd::Zero(dim, dim);
  if (m.imag().cwiseAbs().maxCoeff() != 0.0)
    throw std::invalid_argument(
        "sdpa export: block has imaginary entries; embed the problem first");
  return m.real();
}

void write_entries(std::ostream& os, int matno, int blk,
                   const Eigen::MatrixXd& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i; j < m.cols(); ++j)
      if (m(i, j) != 0.0)
        os << matno << " " << blk << " " << i + 1 << " " << j + 1 << " "
           << m(i, j) << "\n";
}

}  // namespace

void write_sdpa_sparse(const SdpProblem& p, std::ostream& os) {
  p.validate();
  os << std::setprecision(17);
  os << "* exported by freecert (dense hermitian blocks, real data)\n";
  os << p.num_constraints() << " = mDIM\n";
  os << p.num_blocks() << " = nBLOCK\n";
  for (int i = 0; i < p.num_blocks(); ++i)
    os << p.block_dims[i] << (i + 1 < p.num_blocks() ? " " : "");
  os << "\n";
  for (int k = 0; k < p.num_constraints(); ++k)
    os << p.constraints[k].rhs << (k + 1 < p.num_constraints() ? " " : "");
  os << "\n";
  if (p.objective)
    for (int i = 0; i < p.num_blocks(); ++i)
      write_entries(os, 0, i + 1, real_view((*p.objective)[i], p.block_dims[i]));
  for (int k = 0; k < p.num_constraints(); ++k)
    for (int i = 0; i < p.num_blocks(); ++i)
      write_entries(os, k + 1, i + 1,
                    real_view(p.constraints[k].data[i], p.block_dims[i]));
}

void write_sdpa_sparse_file(const SdpProblem& p, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("sdpa export: cannot open " + path);
  write_sdpa_sparse(p, os);
}

SdpProblem read_sdpa_sparse(std::istream& is) {
  std::string line;
  auto next_data_line = [&]() -> std::string {
    while (std::getline(is, line)) {
      size_t pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;
      if (line[pos] == '*' || line[pos] == '"') continue;
      return line.substr(pos);
    }
    throw std::runtime_error("sdpa import: unexpected end of file");
  };
  auto leading_int = [](const std::string& s) {
    std::istringstream in(s);
    long v;
    if (!(in >> v)) throw std::runtime_error("sdpa import: expected integer");
    return v;
  };

  const long m = leading_int(next_data_line());
  const long nblock = leading_int(next_data_line());
  if (m < 0 || nblock <= 0)
    throw std::runtime_error("sdpa import: bad dimensions");

  SdpProblem p;
  {
    std::string dims_line = next_data_line();
    for (char& ch : dims_line)
      if (ch == ',' || ch == '(' || ch == ')' || ch == '{' || ch == '}')
        ch = ' ';
    std::istringstream in(dims_line);
    long d;
    while (in >> d) {
      if (d < 0)
        throw std::runtime_error(
            "sdpa import: diagonal (negative) blocks are not supported");
      p.block_dims.push_back(static_cast<int>(d));
    }
    if (static_cast<long>(p.block_dims.size()) != nblock)
      throw std::runtime_error("sdpa import: block count mismatch");
  }
  {
    std::string c_line = next_data_line();
    for (char& ch : c_line)
      if (ch == ',' || ch == '(' || ch == ')' || ch == '{' || ch == '}')
        ch = ' ';
    std::istringstream in(c_line);
    double v;
    std::vector<double> rhs;
    while (in >> v) rhs.push_back(v);
    if (static_cast<long>(rhs.size()) != m)
      throw std::runtime_error("sdpa import: rhs count mismatch");
    p.constraints.resize(m);
    for (long k = 0; k < m; ++k) {
      p.constraints[k].rhs = rhs[k];
      for (int d : p.block_dims)
        p.constraints[k].data.push_back(Mat::Zero(d, d));
    }
  }
  std::vector<Mat> obj;
  for (int d : p.block_dims) obj.push_back(Mat::Zero(d, d));
  bool has_obj = false;

  long matno, blk, bi, bj;
  double val;
  while (is >> matno >> blk >> bi >> bj >> val) {
    if (blk < 1 || blk > nblock)
      throw std::runtime_error("sdpa import: block index out of range");
    int d = p.block_dims[blk - 1];
    if (bi < 1 || bj < 1 || bi > d || bj > d)
      throw std::runtime_error("sdpa import: entry index out of range");
    auto put = [&](Mat& mtx) {
      mtx(bi - 1, bj - 1) = val;
      mtx(bj - 1, bi - 1) = val;
    };
    if (matno == 0) {
      has_obj = true;
      put(obj[blk - 1]);
    } else if (matno >= 1 && matno <= m) {
      put(p.constraints[matno - 1].data[blk - 1]);
    } else {
      throw std::runtime_error("sdpa import: matrix index out of range");
    }
  }
  if (has_obj) p.objective = std::move(obj);
  return p;
}

SdpProblem read_sdpa_sparse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("sdpa import: cannot open " + path);
  return read_sdpa_sparse(is);
}

}  // namespace freecert
