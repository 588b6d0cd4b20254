#include "qpost/state_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qpost {

double StateFile::norm_deviation() const {
  double s = 0.0;
  for (const cdouble& z : amplitudes) s += std::norm(z);
  return std::abs(std::sqrt(s) - 1.0);
}

Ket StateFile::to_ket() const {
  const double deviation = norm_deviation();
  if (deviation > 1e-3) {
    throw ParseError("state '" + (label.empty() ? std::string("<unlabeled>") : label) +
                     "' is too far from normalized: |norm - 1| = " + std::to_string(deviation));
  }
  return Ket::normalized(amplitudes);
}

StateFile parse_state_file(const std::string& text) {
  StateFile out;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  bool have_dim = false;

  while (std::getline(stream, line)) {
    ++line_no;
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    const std::string body = line.substr(start);

    if (body.rfind("label:", 0) == 0) {
      std::size_t v = body.find_first_not_of(" \t", 6);
      out.label = (v == std::string::npos) ? "" : body.substr(v);
      while (!out.label.empty() && (out.label.back() == '\r' || out.label.back() == ' ')) {
        out.label.pop_back();
      }
      continue;
    }
    if (body.rfind("dim:", 0) == 0) {
      if (have_dim) throw ParseError("duplicate dim line at line " + std::to_string(line_no));
      std::istringstream v(body.substr(4));
      if (!(v >> out.dim) || out.dim < 2) {
        throw ParseError("invalid dim at line " + std::to_string(line_no) +
                         " (need an integer >= 2)");
      }
      have_dim = true;
      continue;
    }
    if (!have_dim) {
      throw ParseError("amplitude before dim line at line " + std::to_string(line_no));
    }
    if (static_cast<int>(out.amplitudes.size()) >= out.dim) {
      throw ParseError("more than dim amplitude lines at line " + std::to_string(line_no));
    }
    std::istringstream v(body);
    double re = 0.0, im = 0.0;
    if (!(v >> re >> im)) {
      throw ParseError("expected 're im' pair at line " + std::to_string(line_no));
    }
    std::string rest;
    if (v >> rest) {
      throw ParseError("trailing tokens after amplitude at line " + std::to_string(line_no));
    }
    out.amplitudes.emplace_back(re, im);
  }

  if (!have_dim) throw ParseError("missing dim line");
  if (static_cast<int>(out.amplitudes.size()) != out.dim) {
    throw ParseError("expected " + std::to_string(out.dim) + " amplitudes, got " +
                     std::to_string(out.amplitudes.size()));
  }
  return out;
}

StateFile load_state_file(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw ParseError("cannot open state file: " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  StateFile out = parse_state_file(buffer.str());
  if (out.label.empty()) out.label = path.stem().string();
  return out;
}

std::string format_state_file(const StateFile& state) {
  std::ostringstream out;
  out.precision(17);
  if (!state.label.empty()) out << "label: " << state.label << "\n";
  out << "dim: " << state.dim << "\n";
  for (const cdouble& z : state.amplitudes) {
    out << z.real() << " " << z.imag() << "\n";
  }
  return out.str();
}

}  // namespace qpost
