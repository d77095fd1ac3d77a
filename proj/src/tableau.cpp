#include "rrk/tableau.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace rrk {

namespace {

constexpr double kStructuralTol = 1e-14;
constexpr double kOrderTol = 1e-12;

}  // namespace

ButcherTableau::ButcherTableau(std::vector<std::vector<double>> a,
                               std::vector<double> b, std::vector<double> c,
                               int claimed_order, std::string name,
                               std::string source)
    : stages_(static_cast<int>(b.size())),
      b_(std::move(b)),
      c_(std::move(c)),
      claimed_order_(claimed_order),
      name_(std::move(name)),
      source_(std::move(source)) {
  const int s = stages_;
  if (s < 1) throw std::invalid_argument("tableau '" + name_ + "': needs at least one stage");
  if (claimed_order_ < 1)
    throw std::invalid_argument("tableau '" + name_ + "': claimed order must be positive");
  if (static_cast<int>(a.size()) != s || static_cast<int>(c_.size()) != s)
    throw std::invalid_argument("tableau '" + name_ + "': A, b, c dimensions disagree");
  a_.resize(static_cast<std::size_t>(s) * s);
  for (int i = 0; i < s; ++i) {
    if (static_cast<int>(a[i].size()) != s)
      throw std::invalid_argument("tableau '" + name_ + "': A is not square");
    for (int j = 0; j < s; ++j) a_[static_cast<std::size_t>(i) * s + j] = a[i][j];
  }

  double bsum = 0.0;
  for (double w : b_) bsum += w;
  if (std::abs(bsum - 1.0) > kStructuralTol)
    throw std::invalid_argument("tableau '" + name_ + "': weights sum to " +
                                std::to_string(bsum) + ", not 1");

  for (int i = 0; i < s; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < s; ++j) rowsum += this->a(i, j);
    if (std::abs(rowsum - c_[i]) > kStructuralTol * std::max(1.0, std::abs(c_[i])))
      throw std::invalid_argument("tableau '" + name_ + "': row " + std::to_string(i) +
                                  " of A sums to " + std::to_string(rowsum) +
                                  " but c = " + std::to_string(c_[i]));
  }

  explicit_ = true;
  for (int i = 0; i < s && explicit_; ++i)
    for (int j = i; j < s; ++j)
      if (this->a(i, j) != 0.0) { explicit_ = false; break; }

  nonneg_weights_ = true;
  for (double w : b_)
    if (w < 0.0) { nonneg_weights_ = false; break; }
}

TableauReport check_order_conditions(const ButcherTableau& t) {
  const int s = t.stages();
  const auto& b = t.b();
  const auto& c = t.c();

  auto matvec = [&](const std::vector<double>& v) {
    std::vector<double> out(static_cast<std::size_t>(s), 0.0);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) out[i] += t.a(i, j) * v[j];
    return out;
  };
  auto wdot = [&](const std::vector<double>& v) {
    double acc = 0.0;
    for (int i = 0; i < s; ++i) acc += b[i] * v[i];
    return acc;
  };
  auto had = [&](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> out(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) out[i] = x[i] * y[i];
    return out;
  };

  std::vector<double> ones(static_cast<std::size_t>(s), 1.0);
  const auto c2 = had(c, c);
  const auto c3 = had(c2, c);
  const auto ac = matvec(c);
  const auto ac2 = matvec(c2);
  const auto aac = matvec(ac);

  // Rooted-tree conditions grouped by order, through order 4.
  const std::pair<double, double> conditions[4][4] = {
      {{wdot(ones), 1.0}, {0, 0}, {0, 0}, {0, 0}},
      {{wdot(c), 1.0 / 2.0}, {0, 0}, {0, 0}, {0, 0}},
      {{wdot(c2), 1.0 / 3.0}, {wdot(ac), 1.0 / 6.0}, {0, 0}, {0, 0}},
      {{wdot(c3), 1.0 / 4.0},
       {wdot(had(c, ac)), 1.0 / 8.0},
       {wdot(ac2), 1.0 / 12.0},
       {wdot(aac), 1.0 / 24.0}},
  };
  const int counts[4] = {1, 1, 2, 4};

  TableauReport report;
  for (int order = 0; order < 4; ++order) {
    bool ok = true;
    for (int k = 0; k < counts[order]; ++k)
      ok = ok && std::abs(conditions[order][k].first - conditions[order][k].second) <= kOrderTol;
    if (!ok) break;
    report.satisfied_order = order + 1;
  }

  report.nonneg_weights = t.nonneg_weights();
  double ex_a = 0.0;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) ex_a += b[i] * t.a(i, j);
  double bsum = 0.0;
  for (double w : b) bsum += w;
  report.existence_a = ex_a;
  report.existence_b = ex_a - wdot(ones) * bsum;
  return report;
}

namespace {

using Rows = std::vector<std::vector<double>>;

ButcherTableau make_ssprk22() {
  // Shu & Osher (1988), optimal two stage second order SSP pair.
  return ButcherTableau({{0, 0}, {1, 0}}, {1.0 / 2, 1.0 / 2}, {0, 1}, 2,
                        "SSPRK(2,2)", "Shu & Osher (1988)");
}

ButcherTableau make_ssprk33() {
  // Shu & Osher (1988), optimal three stage third order SSP method.
  return ButcherTableau({{0, 0, 0}, {1, 0, 0}, {1.0 / 4, 1.0 / 4, 0}},
                        {1.0 / 6, 1.0 / 6, 2.0 / 3}, {0, 1, 1.0 / 2}, 3,
                        "SSPRK(3,3)", "Shu & Osher (1988)");
}

ButcherTableau make_ssprk104() {
  // Ketcheson (2008), ten stage fourth order low-storage SSP method,
  // expanded from the two-register form into Butcher coefficients.
  const int s = 10;
  Rows a(s, std::vector<double>(s, 0.0));
  for (int i = 1; i < 5; ++i)
    for (int j = 0; j < i; ++j) a[i][j] = 1.0 / 6.0;
  for (int i = 5; i < 10; ++i) {
    for (int j = 0; j < 5; ++j) a[i][j] = 1.0 / 15.0;
    for (int j = 5; j < i; ++j) a[i][j] = 1.0 / 6.0;
  }
  std::vector<double> b(s, 1.0 / 10.0);
  std::vector<double> c(s, 0.0);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) c[i] += a[i][j];
  return ButcherTableau(a, b, c, 4, "SSPRK(10,4)", "Ketcheson (2008)");
}

ButcherTableau make_rk44() {
  // The classical fourth order method.
  return ButcherTableau(
      {{0, 0, 0, 0}, {1.0 / 2, 0, 0, 0}, {0, 1.0 / 2, 0, 0}, {0, 0, 1, 0}},
      {1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6}, {0, 1.0 / 2, 1.0 / 2, 1}, 4,
      "RK(4,4)", "Kutta (1901); Hairer, Norsett & Wanner, Table II.1.2");
}

ButcherTableau make_heun33() {
  // Heun's classical three stage third order method.
  return ButcherTableau({{0, 0, 0}, {1.0 / 3, 0, 0}, {0, 2.0 / 3, 0}},
                        {1.0 / 4, 0, 3.0 / 4}, {0, 1.0 / 3, 2.0 / 3}, 3,
                        "Heun(3,3)", "Heun (1900)");
}

ButcherTableau make_bsrk33() {
  // Bogacki & Shampine (1989), third order member of the 3(2) pair.
  return ButcherTableau({{0, 0, 0}, {1.0 / 2, 0, 0}, {0, 3.0 / 4, 0}},
                        {2.0 / 9, 1.0 / 3, 4.0 / 9}, {0, 1.0 / 2, 3.0 / 4}, 3,
                        "BSRK(3,3)", "Bogacki & Shampine (1989)");
}

ButcherTableau make_bsrk85() {
  // Bogacki & Shampine (1996), fifth order member of the efficient (4,5)
  // pair. All weights are nonnegative; the last stage only feeds the
  // embedded estimator, which is not carried here.
  Rows a(8, std::vector<double>(8, 0.0));
  a[1] = {1.0 / 6, 0, 0, 0, 0, 0, 0, 0};
  a[2] = {2.0 / 27, 4.0 / 27, 0, 0, 0, 0, 0, 0};
  a[3] = {183.0 / 1372, -162.0 / 343, 1053.0 / 1372, 0, 0, 0, 0, 0};
  a[4] = {68.0 / 297, -4.0 / 11, 42.0 / 143, 1960.0 / 3861, 0, 0, 0, 0};
  a[5] = {597.0 / 22528, 81.0 / 352, 63099.0 / 585728, 58653.0 / 366080,
          4617.0 / 20480, 0, 0, 0};
  a[6] = {174197.0 / 959244, -30942.0 / 79937, 8152137.0 / 19744439,
          666106.0 / 1039181, -29421.0 / 29068, 482048.0 / 414219, 0, 0};
  a[7] = {587.0 / 8064, 0, 4440339.0 / 15491840, 24353.0 / 124800,
          387.0 / 44800, 2152.0 / 5985, 7267.0 / 94080, 0};
  std::vector<double> b = {587.0 / 8064,   0,
                           4440339.0 / 15491840, 24353.0 / 124800,
                           387.0 / 44800,  2152.0 / 5985,
                           7267.0 / 94080, 0};
  std::vector<double> c = {0, 1.0 / 6, 2.0 / 9, 3.0 / 7, 2.0 / 3, 3.0 / 4, 1, 1};
  return ButcherTableau(a, b, c, 5, "BSRK(8,5)", "Bogacki & Shampine (1996)");
}

ButcherTableau make_vrk96() {
  // Verner's "most robust" 9 stage 6(5) pair, sixth order weights.
  // Transcribed from the rational form of the RKV65.IIIXb robust
  // coefficients published on Verner's method page (2010 revision).
  Rows a(9, std::vector<double>(9, 0.0));
  a[1][0] = 9.0 / 50;
  a[2][0] = 29.0 / 324;
  a[2][1] = 25.0 / 324;
  a[3][0] = 1.0 / 16;
  a[3][2] = 3.0 / 16;
  a[4][0] = 79129.0 / 250000;
  a[4][2] = -261237.0 / 250000;
  a[4][3] = 19663.0 / 15625;
  a[5][0] = 1336883.0 / 4909125;
  a[5][2] = -25476.0 / 30875;
  a[5][3] = 194159.0 / 185250;
  a[5][4] = 8225.0 / 78546;
  a[6][0] = -2459386.0 / 14727375;
  a[6][2] = 19504.0 / 30875;
  a[6][3] = 2377474.0 / 13615875;
  a[6][4] = -6157250.0 / 5773131;
  a[6][5] = 902.0 / 735;
  a[7][0] = 2699.0 / 7410;
  a[7][2] = -252.0 / 1235;
  a[7][3] = -1393253.0 / 3993990;
  a[7][4] = 236875.0 / 72618;
  a[7][5] = -135.0 / 49;
  a[7][6] = 15.0 / 22;
  std::vector<double> b = {11.0 / 144, 0, 0,          256.0 / 693, 0,
                           125.0 / 504, 125.0 / 528, 5.0 / 72,    0};
  for (int j = 0; j < 9; ++j) a[8][j] = b[j];  // FSAL row of the pair
  std::vector<double> c = {0, 9.0 / 50, 1.0 / 6, 1.0 / 4, 53.0 / 100,
                           3.0 / 5, 4.0 / 5, 1, 1};
  return ButcherTableau(a, b, c, 6, "VRK(9,6)",
                        "Verner (1978 family), RKV65.IIIXb robust coefficients");
}

}  // namespace

ButcherTableau builtin_tableau(const std::string& name) {
  if (name == "SSPRK(2,2)") return make_ssprk22();
  if (name == "SSPRK(3,3)") return make_ssprk33();
  if (name == "SSPRK(10,4)") return make_ssprk104();
  if (name == "RK(4,4)") return make_rk44();
  if (name == "Heun(3,3)") return make_heun33();
  if (name == "BSRK(3,3)") return make_bsrk33();
  if (name == "BSRK(8,5)") return make_bsrk85();
  if (name == "VRK(9,6)") return make_vrk96();
  std::string known;
  for (const auto& n : builtin_tableau_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown tableau name '" + name + "' (known: " + known + ")");
}

std::vector<std::string> builtin_tableau_names() {
  return {"SSPRK(2,2)", "SSPRK(3,3)", "SSPRK(10,4)", "RK(4,4)",
          "Heun(3,3)",  "BSRK(3,3)",  "BSRK(8,5)",   "VRK(9,6)"};
}

ButcherTableau load_tableau(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("tableau file: empty input");
  std::istringstream hs(header);
  int s = 0, p = 0;
  std::string name;
  if (!(hs >> s >> p)) throw std::invalid_argument("tableau file: bad header line '" + header + "'");
  std::getline(hs, name);
  const auto pos = name.find_first_not_of(" \t");
  name = (pos == std::string::npos) ? "unnamed" : name.substr(pos);
  if (s < 1) throw std::invalid_argument("tableau file: stage count must be positive");

  auto read_row = [&](int count, const char* what) {
    std::vector<double> row(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j)
      if (!(in >> row[j]))
        throw std::invalid_argument(std::string("tableau file: failed reading ") + what);
    return row;
  };

  Rows a;
  a.reserve(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) a.push_back(read_row(s, "a matrix row"));
  auto b = read_row(s, "weights b");
  auto c = read_row(s, "abscissae c");
  return ButcherTableau(a, b, c, p, name, "imported from file");
}

ButcherTableau load_tableau_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open tableau file '" + path + "'");
  return load_tableau(in);
}

}  // namespace rrk
