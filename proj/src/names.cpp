#include "fusionlab/names.hpp"

#include <array>

namespace fusionlab {

namespace {

GroupPtr symmetric(int n) {
  std::vector<Perm> gens;
  gens.push_back(Perm::from_cycles(n, {{1, 2}}));
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i) cyc[i] = i + 1;
  gens.push_back(Perm::from_cycles(n, {cyc}));
  return PermGroup::from_generators(n, gens);
}

GroupPtr alternating(int n) {
  std::vector<Perm> gens;
  gens.push_back(Perm::from_cycles(n, {{1, 2, 3}}));
  if (n > 3) {
    std::vector<int> cyc;
    if (n % 2 == 1) {
      for (int i = 0; i < n; ++i) cyc.push_back(i + 1);
    } else {
      for (int i = 1; i < n; ++i) cyc.push_back(i + 1);
    }
    gens.push_back(Perm::from_cycles(n, {cyc}));
  }
  return PermGroup::from_generators(n, gens);
}

GroupPtr cyclic(int n) {
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i) cyc[i] = i + 1;
  return PermGroup::from_generators(n, {Perm::from_cycles(n, {cyc})});
}

GroupPtr dihedral8() {
  return PermGroup::from_generators(
      4, {Perm::from_cycles(4, {{1, 2, 3, 4}}), Perm::from_cycles(4, {{1, 3}})});
}

GroupPtr quaternion8() {
  // regular action on {1,-1,i,-i,j,-j,k,-k}
  return PermGroup::from_generators(8, {Perm::from_cycles(8, {{1, 3, 2, 4}, {5, 7, 6, 8}}),
                                        Perm::from_cycles(8, {{1, 5, 2, 6}, {3, 8, 4, 7}})});
}

using M2 = std::array<int, 4>;  // row-major 2x2 over F_3

int vec_id(int x, int y) {
  int id = 0, k = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == 0 && b == 0) continue;
      if (a == x && b == y) id = k;
      ++k;
    }
  return id;
}

Perm sl2_perm(const M2& m) {
  std::vector<std::uint16_t> img(8);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      if (x == 0 && y == 0) continue;
      int nx = (m[0] * x + m[1] * y) % 3;
      int ny = (m[2] * x + m[3] * y) % 3;
      img[vec_id(x, y)] = static_cast<std::uint16_t>(vec_id(nx, ny));
    }
  return Perm(std::move(img));
}

constexpr M2 kSlGenA{1, 1, 0, 1};
constexpr M2 kSlGenB{0, 2, 1, 0};

GroupPtr sl23() { return PermGroup::from_generators(8, {sl2_perm(kSlGenA), sl2_perm(kSlGenB)}); }

M2 m2_mul(const M2& a, const M2& b) {
  return {(a[0] * b[0] + a[1] * b[2]) % 3, (a[0] * b[1] + a[1] * b[3]) % 3,
          (a[2] * b[0] + a[3] * b[2]) % 3, (a[2] * b[1] + a[3] * b[3]) % 3};
}

M2 m2_inv(const M2& a) {
  // det = 1 for SL_2
  return {a[3] % 3, (3 - a[1] % 3) % 3, (3 - a[2] % 3) % 3, a[0] % 3};
}

// conjugation action on trace-zero matrices, basis E, H, F
FpMat adjoint_of(const M2& g) {
  auto coords = [](const M2& x) {
    // x = [[a, b], [c, -a]]: coordinates (b, a, c)
    return std::array<int, 3>{x[1] % 3, x[0] % 3, x[2] % 3};
  };
  const M2 basis[3] = {{0, 1, 0, 0}, {1, 0, 0, 2}, {0, 0, 1, 0}};
  FpMat out(3, 3);
  M2 gi = m2_inv(g);
  for (int j = 0; j < 3; ++j) {
    M2 y = m2_mul(m2_mul(g, basis[j]), gi);
    auto c = coords(y);
    for (int i = 0; i < 3; ++i) out.at(i, j) = static_cast<std::uint8_t>(c[i]);
  }
  return out;
}

}  // namespace

GroupPtr named_group(const std::string& name) {
  if (name == "S3") return symmetric(3);
  if (name == "S4") return symmetric(4);
  if (name == "S5") return symmetric(5);
  if (name == "A4") return alternating(4);
  if (name == "A5") return alternating(5);
  if (name == "D8") return dihedral8();
  if (name == "Q8") return quaternion8();
  if (name == "SL23") return sl23();
  if (name.size() > 1 && name[0] == 'C') {
    // both C6 and C(6)
    std::string digits = name.substr(1);
    if (digits.front() == '(' && digits.back() == ')') digits = digits.substr(1, digits.size() - 2);
    int n = std::stoi(digits);
    if (n >= 1) return cyclic(n);
  }
  if (name.rfind("wreath:", 0) == 0) {
    auto rest = name.substr(7);
    auto colon = rest.rfind(':');
    GroupPtr base = named_group(rest.substr(0, colon));
    int p = std::stoi(rest.substr(colon + 1));
    return wreath_product_cp(base, p).group;
  }
  if (name.rfind("prod:", 0) == 0) {
    auto rest = name.substr(5);
    auto colon = rest.find(':');
    GroupPtr a = named_group(rest.substr(0, colon));
    GroupPtr b = named_group(rest.substr(colon + 1));
    return direct_product(a, b).group;
  }
  throw Error("UnknownGroup", "unknown group name: " + name);
}

GModule named_module(GroupPtr g, const std::string& group_name, int p,
                     const std::string& module_name) {
  if (module_name.rfind("trivial:", 0) == 0)
    return GModule::trivial(g, p, std::stoi(module_name.substr(8)));
  if (module_name == "trivial") return GModule::trivial(g, p, 1);
  if (module_name == "sign") return GModule::sign(g, p);
  auto gens2 = [&](FpMat a, FpMat b) {
    return GModule::from_generator_action(g, p, a.rows, {a, b});
  };
  if (module_name == "natural2" && group_name == "S3") {
    FpMat a(2, 2), b(2, 2);
    a.at(0, 1) = a.at(1, 0) = 1;             // (1 2)
    b.at(0, 1) = b.at(1, 0) = b.at(1, 1) = 1;  // (1 2 3)
    return gens2(a, b);
  }
  if (module_name == "quo6" && group_name == "S4") {
    FpMat a(2, 2), b(2, 2);
    a.at(0, 1) = a.at(1, 0) = 1;             // image of (1 2)
    b.at(0, 0) = b.at(0, 1) = b.at(1, 1) = 1;  // image of (1 2 3 4), order 2
    return gens2(a, b);
  }
  if (module_name == "a4c3" && group_name == "A4") {
    // through A4 -> A4/V = C3 < GL_2(F_2); generators here are (1 2 3) and
    // (2 3 4), whose product is a double transposition, so the images are
    // inverse to each other
    FpMat m3(2, 2);
    m3.at(0, 1) = m3.at(1, 0) = m3.at(1, 1) = 1;
    FpMat m3sq = fp_mul(Fp(2), m3, m3);
    return gens2(m3, m3sq);
  }
  if (module_name == "unip2" && group_name == "D8") {
    FpMat a = FpMat::identity(2), b(2, 2);
    b.at(0, 0) = b.at(0, 1) = b.at(1, 1) = 1;
    return gens2(a, b);
  }
  if (module_name == "adjoint3" && group_name == "SL23") {
    return gens2(adjoint_of(kSlGenA), adjoint_of(kSlGenB));
  }
  throw Error("UnknownModule", "unknown module " + module_name + " for " + group_name);
}

}  // namespace fusionlab
