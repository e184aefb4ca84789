#include "harmalg/patterns.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>

#include "harmalg/parse.hpp"

namespace harmalg {

PatternBox::PatternBox(int max_total_degree, BidegreeSet members) : d_(max_total_degree) {
  if (max_total_degree < 0) throw std::invalid_argument("box degree must be nonnegative");
  for (const auto& b : members) {
    if (!in_box(b))
      throw std::invalid_argument("point (" + std::to_string(b.p) + "," + std::to_string(b.q) +
                                  ") lies outside the box of total degree " + std::to_string(d_));
    members_.insert(b);
  }
}

PatternBox PatternBox::full(int max_total_degree) {
  return from_predicate(max_total_degree, [](Bidegree) { return true; });
}

bool PatternBox::insert(Bidegree b) {
  if (!in_box(b)) return false;
  return members_.insert(b).second;
}

BidegreeSet combine_points(Bidegree a, Bidegree b, CombineRule rule) {
  const int mu = std::min({a.p + a.q, b.p + b.q, a.p + b.p, a.q + b.q});
  const int sign = rule == CombineRule::Minus ? -1 : 1;
  BidegreeSet out;
  for (int j = 0; j <= mu; ++j) out.insert({a.p + b.p + sign * j, a.q + b.q + sign * j});
  return out;
}

PatternBox closure_box(const PatternBox& seed, CombineRule rule) {
  PatternBox out(seed.max_total_degree(), {});
  std::deque<Bidegree> work(seed.members().begin(), seed.members().end());
  for (const auto& b : seed.members()) out.insert(b);
  std::vector<Bidegree> done;
  while (!work.empty()) {
    Bidegree x = work.front();
    work.pop_front();
    done.push_back(x);
    for (const auto& y : done)
      for (const auto& c : combine_points(x, y, rule))
        if (out.insert(c)) work.push_back(c);
  }
  return out;
}

std::optional<PatternViolation> find_pattern_violation(const PatternBox& omega, CombineRule rule) {
  const auto& m = omega.members();
  for (auto i = m.begin(); i != m.end(); ++i)
    for (auto j = i; j != m.end(); ++j)
      for (const auto& c : combine_points(*i, *j, rule))
        if (omega.in_box(c) && !omega.contains(c)) return PatternViolation{*j, *i, c};
  return std::nullopt;
}

bool is_pattern_box(const PatternBox& omega, CombineRule rule) {
  return !find_pattern_violation(omega, rule).has_value();
}

bool in_semigroup(const std::vector<int>& gens, int k) {
  if (k < 1) return false;
  std::vector<char> reach(static_cast<std::size_t>(k) + 1, 0);
  reach[0] = 1;
  for (int v = 1; v <= k; ++v)
    for (int g : gens)
      if (g >= 1 && g <= v && reach[v - g]) {
        reach[v] = 1;
        break;
      }
  return reach[k] != 0;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool in_gpq(int p, int q, Bidegree b) {
  if (b.p == p && b.q == q) return true;
  const int diff = b.p - b.q;
  if (diff <= 0 || diff % (p - q) != 0) return false;
  const int m = diff / (p - q);
  return m >= 2 && b.q >= 0 && b.q <= m * q;
}

bool gpq_n2_deleted(int p, int q, Bidegree b) {
  const int diff = b.p - b.q;
  if (diff > 0 && diff % (p - q) == 0) {
    const int m = diff / (p - q);
    if (m >= 2 && b.q == m * q - 1) return true;
  }
  if (diff == 2 * (p - q)) {
    const int j = 2 * q - b.q;
    if (j >= 0 && j <= 2 * q && j % 2 == 1) return true;
  }
  return false;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

void validate(const PatternFamily& fam) {
  std::visit(overloaded{
                 [](const family::GofD& f) {
                   if (f.d < 1) throw InvalidFamily("G(d) requires d >= 1");
                 },
                 [](const family::GofSigma& f) {
                   for (int g : f.generators)
                     if (g < 1) throw InvalidFamily("GSigma generators must be positive");
                 },
                 [](const family::GofSigmaStar& f) {
                   for (int g : f.generators)
                     if (g < 1) throw InvalidFamily("GSigmaStar generators must be positive");
                 },
                 [](const family::Gpq& f) {
                   if (!(f.p > f.q && f.q >= 0)) throw InvalidFamily("Gpq requires p > q >= 0");
                 },
                 [](const family::GpqN2& f) {
                   if (!(f.p > f.q && f.q >= 0)) throw InvalidFamily("GpqN2 requires p > q >= 0");
                 },
                 [](const auto&) {},
             },
             fam);
}

bool family_membership(const PatternFamily& fam, Bidegree b) {
  if (b.p < 0 || b.q < 0) return false;
  validate(fam);
  return std::visit(
      overloaded{
          [](const family::Empty&) { return false; },
          [&](const family::Origin&) { return b.p == 0 && b.q == 0; },
          [&](const family::Hol&) { return b.q == 0; },
          [&](const family::AntiHol&) { return b.p == 0; },
          [&](const family::Pluriharmonic&) { return b.p == 0 || b.q == 0; },
          [](const family::Full&) { return true; },
          [&](const family::GofD& f) { return (b.p - b.q) % f.d == 0; },
          [&](const family::GofSigma& f) {
            return b.p == b.q || (b.p > b.q && in_semigroup(f.generators, b.p - b.q));
          },
          [&](const family::GofSigmaStar& f) {
            if (b.p == b.q) return b.p % 2 == 0;
            return b.p > b.q && in_semigroup(f.generators, b.p - b.q);
          },
          [&](const family::Gpq& f) { return in_gpq(f.p, f.q, b); },
          [&](const family::GpqN2& f) { return in_gpq(f.p, f.q, b) && !gpq_n2_deleted(f.p, f.q, b); },
      },
      fam);
}

PatternBox truncate(const PatternFamily& fam, int max_total_degree) {
  validate(fam);
  return PatternBox::from_predicate(max_total_degree, [&](Bidegree b) { return family_membership(fam, b); });
}

std::string to_string(const PatternFamily& fam) {
  return std::visit(overloaded{
                        [](const family::Empty&) -> std::string { return "empty"; },
                        [](const family::Origin&) -> std::string { return "origin"; },
                        [](const family::Hol&) -> std::string { return "hol"; },
                        [](const family::AntiHol&) -> std::string { return "antihol"; },
                        [](const family::Pluriharmonic&) -> std::string { return "plurih"; },
                        [](const family::Full&) -> std::string { return "full"; },
                        [](const family::GofD& f) { return "G(d=" + std::to_string(f.d) + ")"; },
                        [](const family::GofSigma& f) { return "GSigma(" + join_ints(f.generators) + ")"; },
                        [](const family::GofSigmaStar& f) {
                          return "GSigmaStar(" + join_ints(f.generators) + ")";
                        },
                        [](const family::Gpq& f) {
                          return "Gpq(" + std::to_string(f.p) + "," + std::to_string(f.q) + ")";
                        },
                        [](const family::GpqN2& f) {
                          return "GpqN2(" + std::to_string(f.p) + "," + std::to_string(f.q) + ")";
                        },
                    },
                    fam);
}

namespace {

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

std::vector<int> parse_int_list(const std::string& body, std::string_view literal) {
  std::vector<int> out;
  if (body.empty()) return out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("malformed integer list in family literal '" + std::string(literal) + "'", 0);
    out.push_back(std::stoi(item));
  }
  return out;
}

}  // namespace

PatternFamily parse_family(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s == "empty") return family::Empty{};
  if (s == "origin") return family::Origin{};
  if (s == "hol") return family::Hol{};
  if (s == "antihol") return family::AntiHol{};
  if (s == "plurih") return family::Pluriharmonic{};
  if (s == "full") return family::Full{};

  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw ParseError("unknown family literal '" + s + "'", 0);
  const std::string head = s.substr(0, open);
  std::string body = s.substr(open + 1, s.size() - open - 2);

  PatternFamily fam;
  if (head == "G") {
    if (body.rfind("d=", 0) == 0) body = body.substr(2);
    auto v = parse_int_list(body, text);
    if (v.size() != 1) throw ParseError("G(d=...) takes one integer", open + 1);
    fam = family::GofD{v[0]};
  } else if (head == "GSigma") {
    fam = family::GofSigma{parse_int_list(body, text)};
  } else if (head == "GSigmaStar") {
    fam = family::GofSigmaStar{parse_int_list(body, text)};
  } else if (head == "Gpq" || head == "GpqN2") {
    auto v = parse_int_list(body, text);
    if (v.size() != 2) throw ParseError(head + "(p,q) takes two integers", open + 1);
    if (head == "Gpq") fam = family::Gpq{v[0], v[1]};
    else fam = family::GpqN2{v[0], v[1]};
  } else {
    throw ParseError("unknown family literal '" + s + "'", 0);
  }
  validate(fam);
  return fam;
}

PatternBox conjugate_pattern(const PatternBox& omega) {
  BidegreeSet s;
  for (const auto& b : omega.members()) s.insert(b.mirrored());
  return PatternBox(omega.max_total_degree(), std::move(s));
}

namespace {

std::vector<int> minimal_generators(const PatternBox& omega) {
  std::set<int> realized;
  for (const auto& b : omega.members())
    if (b.p > b.q) realized.insert(b.p - b.q);
  std::vector<int> gens;
  for (int g : realized) {
    bool redundant = false;
    for (int a : realized)
      if (a < g && realized.count(g - a)) redundant = true;
    if (!redundant) gens.push_back(g);
  }
  return gens;
}

}  // namespace

ClassificationResult classify_pattern(const PatternBox& omega) {
  if (auto v = find_pattern_violation(omega)) {
    std::ostringstream os;
    os << "not closed under combine_points: " << v->left << " x " << v->right << " needs " << v->missing;
    throw ClassificationError(os.str());
  }
  const int D = omega.max_total_degree();
  ClassificationResult res;
  res.verified_box = D;
  res.notes.push_back("membership verified for p+q <= " + std::to_string(D) + " only");

  auto matches = [&](const PatternFamily& f, const PatternBox& target) { return truncate(f, D) == target; };

  if (omega.empty()) {
    res.family = family::Empty{};
    return res;
  }
  if (omega.members() == BidegreeSet{{0, 0}}) {
    res.family = family::Origin{};
    return res;
  }

  bool above = false, below = false, diag = false;
  for (const auto& b : omega.members()) {
    above = above || b.p > b.q;
    below = below || b.p < b.q;
    diag = diag || (b.p == b.q && b.p > 0);
  }

  if (above && below) {
    int d = 0;
    for (const auto& b : omega.members()) d = std::gcd(d, std::abs(b.p - b.q));
    PatternFamily f = family::GofD{d};
    if (!matches(f, omega))
      throw ClassificationError("points on both sides of the diagonal but the box is not " + to_string(f));
    res.family = f;
    if (d == 1) res.notes.push_back("G(d=1) is all of Q");
    return res;
  }

  res.mirrored = below;
  const PatternBox work = below ? conjugate_pattern(omega) : omega;
  if (res.mirrored) res.notes.push_back("family describes the mirror image (q,p) of the input");

  if (diag) {
    const auto gens = minimal_generators(work);
    PatternFamily g = family::GofSigma{gens}, gs = family::GofSigmaStar{gens};
    if (matches(g, work)) res.family = g;
    else if (matches(gs, work)) res.family = gs;
    else throw ClassificationError("diagonal pattern matches neither " + to_string(g) + " nor " + to_string(gs));
    if (D < 2 * (gens.empty() ? 1 : gens.back()))
      res.notes.push_back("generators above the box degree cannot be detected");
    return res;
  }

  if (matches(family::Hol{}, work)) {
    res.family = res.mirrored ? PatternFamily(family::AntiHol{}) : PatternFamily(family::Hol{});
    res.mirrored = false;
    return res;
  }

  std::vector<Bidegree> gens(work.members().begin(), work.members().end());
  std::stable_sort(gens.begin(), gens.end(), [](Bidegree a, Bidegree b) { return a.total() < b.total(); });
  for (const auto& g : gens) {
    if (g.p <= g.q) continue;
    PatternFamily full = family::Gpq{g.p, g.q}, n2 = family::GpqN2{g.p, g.q};
    const bool mf = matches(full, work), mn = matches(n2, work);
    if (!mf && !mn) continue;
    res.family = mf ? full : n2;
    if (mf && mn && g.q > 0)
      res.notes.push_back("ambiguous within the box: " + to_string(n2) + " also matches");
    if (!mf) res.notes.push_back("GpqN2 deletion (2p-j,2q-j), j odd, taken over 0 <= j <= 2q");
    return res;
  }
  throw ClassificationError("no pattern family matches the box");
}

PatternBox m_ladder_closure(const PatternBox& omega) {
  PatternBox out = omega;
  std::deque<Bidegree> work(omega.members().begin(), omega.members().end());
  auto push = [&](Bidegree b) {
    if (out.insert(b)) work.push_back(b);
  };
  while (!work.empty()) {
    Bidegree b = work.front();
    work.pop_front();
    if (b.p >= 1) {
      push({b.p - 1, b.q});
      push({b.p + 1, b.q});
    }
    if (b.q >= 1) {
      push({b.p, b.q - 1});
      push({b.p, b.q + 1});
    }
  }
  return out;
}

std::string to_string(SixSpace s) {
  switch (s) {
    case SixSpace::Empty: return "empty";
    case SixSpace::Origin: return "origin";
    case SixSpace::Hol: return "hol";
    case SixSpace::AntiHol: return "antihol";
    case SixSpace::Pluriharmonic: return "plurih";
    case SixSpace::Full: return "full";
  }
  return "?";
}

PatternFamily as_family(SixSpace s) {
  switch (s) {
    case SixSpace::Empty: return family::Empty{};
    case SixSpace::Origin: return family::Origin{};
    case SixSpace::Hol: return family::Hol{};
    case SixSpace::AntiHol: return family::AntiHol{};
    case SixSpace::Pluriharmonic: return family::Pluriharmonic{};
    case SixSpace::Full: return family::Full{};
  }
  return family::Empty{};
}

SixSpace six_space_classify(const PatternBox& omega) {
  const PatternBox closed = m_ladder_closure(omega);
  // For D < 2 several of these coincide; the first match wins.
  for (SixSpace s : {SixSpace::Empty, SixSpace::Origin, SixSpace::Hol, SixSpace::AntiHol,
                     SixSpace::Pluriharmonic, SixSpace::Full})
    if (truncate(as_family(s), closed.max_total_degree()) == closed) return s;
  throw std::logic_error("ladder closure outside the six fixpoint families");
}

BidegreeSet n2_deleted_points(Bidegree left, Bidegree right) {
  BidegreeSet out;
  if (left != right || left.total() == 0) return out;
  const auto predicted = combine_points(left, right);
  if (left.p == left.q) {
    const PatternFamily g = family::GofSigma{}, gs = family::GofSigmaStar{};
    for (const auto& x : predicted)
      if (family_membership(g, x) && !family_membership(gs, x)) out.insert(x);
    return out;
  }
  const bool mirror = left.p < left.q;
  const Bidegree base = mirror ? left.mirrored() : left;
  const PatternFamily g = family::Gpq{base.p, base.q}, gn = family::GpqN2{base.p, base.q};
  for (const auto& x : predicted) {
    const Bidegree y = mirror ? x.mirrored() : x;
    if (family_membership(g, y) && !family_membership(gn, y)) out.insert(x);
  }
  return out;
}

BidegreeSet parse_points(std::string_view text) {
  const std::string s = strip_spaces(text);
  BidegreeSet out;
  if (s.empty() || s == "{}") return out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != '(') throw ParseError("expected '('", pos);
    const auto close = s.find(')', pos);
    if (close == std::string::npos) throw ParseError("missing ')'", pos);
    const std::string body = s.substr(pos + 1, close - pos - 1);
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw ParseError("expected 'p,q'", pos + 1);
    try {
      std::size_t used1 = 0, used2 = 0;
      int p = std::stoi(body.substr(0, comma), &used1);
      int q = std::stoi(body.substr(comma + 1), &used2);
      if (used1 != comma || used2 != body.size() - comma - 1 || p < 0 || q < 0)
        throw ParseError("malformed bidegree '(" + body + ")'", pos + 1);
      out.insert({p, q});
    } catch (const std::logic_error&) {
      throw ParseError("malformed bidegree '(" + body + ")'", pos + 1);
    }
    pos = close + 1;
    if (pos < s.size()) {
      if (s[pos] != ';') throw ParseError("expected ';'", pos);
      ++pos;
    }
  }
  return out;
}

std::string render_points(const BidegreeSet& pts) {
  std::string out;
  for (const auto& b : pts) {
    if (!out.empty()) out += ';';
    out += "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")";
  }
  return out;
}

}  // namespace harmalg
