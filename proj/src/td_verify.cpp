#include "tdsharp/td_verify.hpp"

#include <algorithm>

namespace tdsharp {

std::string to_string(FailureTag tag) {
  switch (tag) {
    case FailureTag::not_diagonalizable_A: return "not-diagonalizable-A";
    case FailureTag::not_diagonalizable_Astar: return "not-diagonalizable-A*";
    case FailureTag::no_standard_ordering_A: return "no-standard-ordering-A";
    case FailureTag::no_standard_ordering_Astar: return "no-standard-ordering-A*";
    case FailureTag::reducible: return "reducible";
    case FailureTag::diameter_mismatch: return "diameter-mismatch";
    case FailureTag::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

Adjacency ordering_graph(const std::vector<ExactMatrix>& es, const ExactMatrix& b) {
  Adjacency adj(es.size());
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j)
      if (!(es[i] * b * es[j]).is_zero() || !(es[j] * b * es[i]).is_zero()) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
  return adj;
}

std::vector<std::size_t> component_of(const Adjacency& adj, std::size_t start) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::size_t> stack{start}, out;
  seen[start] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (auto w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> path_orderings(const Adjacency& adj) {
  const std::size_t m = adj.size();
  if (m == 1) return {{0}};
  if (component_of(adj, 0).size() != m) return {};
  std::vector<std::size_t> ends;
  for (std::size_t v = 0; v < m; ++v) {
    if (adj[v].size() > 2) return {};
    if (adj[v].size() == 1) ends.push_back(v);
  }
  if (ends.size() != 2) return {};
  std::vector<std::size_t> path{ends[0]};
  std::size_t prev = m;
  while (path.size() < m) {
    const std::size_t cur = path.back();
    std::size_t next = m;
    for (auto w : adj[cur])
      if (w != prev) next = w;
    prev = cur;
    path.push_back(next);
  }
  std::vector<std::size_t> rev(path.rbegin(), path.rend());
  return {path, rev};
}

std::vector<std::pair<std::size_t, std::size_t>> edges_of(const Adjacency& adj) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < adj.size(); ++i)
    for (auto j : adj[i])
      if (i < j) out.emplace_back(i, j);
  return out;
}

bool lex_less(const Field& f, const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const int c = f.compare(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

// The ordering (of the two) whose eigenvalue sequence is lexicographically smallest.
std::vector<std::size_t> canonical(const Field& f, const std::vector<std::vector<std::size_t>>& orderings,
                                   const std::vector<Scalar>& eigenvalues) {
  auto seq = [&](const std::vector<std::size_t>& o) {
    std::vector<Scalar> s;
    for (auto i : o) s.push_back(eigenvalues[i]);
    return s;
  };
  std::vector<std::size_t> best = orderings[0];
  for (const auto& o : orderings)
    if (lex_less(f, seq(o), seq(best))) best = o;
  return best;
}

ExactMatrix image_of_sum(const std::vector<ExactMatrix>& es, const std::vector<std::size_t>& idx) {
  ExactMatrix sum(es[0].field(), es[0].rows(), es[0].cols());
  for (auto i : idx) sum = sum + es[i];
  return column_space(sum);
}

}  // namespace

std::vector<std::vector<std::size_t>> find_standard_orderings(const std::vector<ExactMatrix>& idempotents,
                                                              const ExactMatrix& b) {
  if (idempotents.empty()) return {};
  return path_orderings(ordering_graph(idempotents, b));
}

VerificationResult verify_td_system(const ExactMatrix& A, const ExactMatrix& Astar, const VerifyOptions& options) {
  if (!(A.field() == Astar.field())) throw FieldMismatch();
  if (!A.is_square()) throw DimensionError("A not square");
  if (!Astar.is_square()) throw DimensionError("A* not square");
  if (A.rows() != Astar.rows()) throw DimensionError("A and A* differ in size");
  if (A.rows() == 0) throw DimensionError("matrices must be nonempty");
  const Field& f = A.field();
  const std::size_t n = A.rows();
  VerificationResult out;
  auto fail = [&](FailureTag tag, std::string detail) -> VerificationResult& {
    out.failure = VerificationFailure{tag, std::move(detail), std::nullopt, {}, std::nullopt};
    return out;
  };

  SpectralData sa = eigendecompose(A);
  if (!sa.diagonalizable) {
    fail(FailureTag::not_diagonalizable_A, "minimal polynomial of A does not split into distinct linear factors");
    out.failure->minpoly_factor = sa.witness;
    return out;
  }
  SpectralData ss = eigendecompose(Astar);
  if (!ss.diagonalizable) {
    fail(FailureTag::not_diagonalizable_Astar, "minimal polynomial of A* does not split into distinct linear factors");
    out.failure->minpoly_factor = ss.witness;
    return out;
  }

  // A disconnected adjacency graph exhibits an invariant subspace directly.
  const Adjacency ga = ordering_graph(sa.idempotents, Astar);
  const Adjacency gs = ordering_graph(ss.idempotents, A);
  auto comp_a = component_of(ga, 0);
  if (comp_a.size() < ga.size()) {
    fail(FailureTag::reducible, "eigenspaces of A split into non-interacting groups");
    out.failure->subspace = image_of_sum(sa.idempotents, comp_a);
    return out;
  }
  auto comp_s = component_of(gs, 0);
  if (comp_s.size() < gs.size()) {
    fail(FailureTag::reducible, "eigenspaces of A* split into non-interacting groups");
    out.failure->subspace = image_of_sum(ss.idempotents, comp_s);
    return out;
  }
  auto orders_a = path_orderings(ga);
  if (orders_a.empty()) {
    fail(FailureTag::no_standard_ordering_A, "adjacency graph of A-eigenspaces under A* is not a path");
    out.failure->graph_edges = edges_of(ga);
    return out;
  }
  auto orders_s = path_orderings(gs);
  if (orders_s.empty()) {
    fail(FailureTag::no_standard_ordering_Astar, "adjacency graph of A*-eigenspaces under A is not a path");
    out.failure->graph_edges = edges_of(gs);
    return out;
  }

  const std::vector<ExactMatrix> gens{A, Astar};
  if (f.is_finite() && f.order() <= 4 && n <= 4) {
    auto subs = bruteforce_invariant_subspaces(gens, n);
    if (!subs.empty()) {
      fail(FailureTag::reducible, "common invariant subspace found by exhaustive search");
      out.failure->subspace = subs.front();
      return out;
    }
  } else {
    Rng rng(options.seed);
    auto irr = norton_irreducible(gens, n, rng, options.budget);
    if (irr.verdict == Verdict::no) {
      fail(FailureTag::reducible, "common invariant subspace found by spin-up");
      out.failure->subspace = irr.witness;
      return out;
    }
    if (irr.verdict == Verdict::inconclusive) {
      fail(FailureTag::inconclusive, "irreducibility test exhausted its trial budget");
      return out;
    }
  }

  if (sa.eigenvalues.size() != ss.eigenvalues.size()) {
    fail(FailureTag::diameter_mismatch, "A and A* have different numbers of eigenvalues");
    return out;
  }

  const auto oa = canonical(f, orders_a, sa.eigenvalues);
  const auto os = canonical(f, orders_s, ss.eigenvalues);
  TDSystemRecord rec{f, A, Astar, sa.eigenvalues.size() - 1, {}, {}, {}, {}, {}, false};
  for (auto i : oa) {
    rec.theta.push_back(sa.eigenvalues[i]);
    rec.E.push_back(sa.idempotents[i]);
  }
  for (auto i : os) {
    rec.theta_star.push_back(ss.eigenvalues[i]);
    rec.E_star.push_back(ss.idempotents[i]);
  }
  auto profile = shape_profile(rec);
  if (!is_symmetric_unimodal(profile.shape)) throw InternalError("shape of a verified TD pair is not symmetric and unimodal");
  rec.shape = profile.shape;
  rec.sharp = profile.sharp;
  out.record = std::move(rec);
  out.orderings_A = orders_a.size();
  out.orderings_Astar = orders_s.size();
  return out;
}

TDSystemRecord reoriented(const TDSystemRecord& record, bool reverse_E, bool reverse_E_star) {
  TDSystemRecord out = record;
  if (reverse_E) {
    std::reverse(out.theta.begin(), out.theta.end());
    std::reverse(out.E.begin(), out.E.end());
  }
  if (reverse_E_star) {
    std::reverse(out.theta_star.begin(), out.theta_star.end());
    std::reverse(out.E_star.begin(), out.E_star.end());
  }
  return out;
}

ShapeProfile shape_profile(const TDSystemRecord& record) {
  ShapeProfile p;
  p.d = record.d;
  for (std::size_t i = 0; i <= record.d; ++i) {
    const std::size_t r = rank(record.E[i]);
    if (r != rank(record.E_star[i]))
      throw InternalError("rank E_" + std::to_string(i) + " differs from rank E*_" + std::to_string(i));
    p.shape.push_back(r);
  }
  p.sharp = !p.shape.empty() && p.shape[0] == 1;
  return p;
}

bool is_symmetric_unimodal(const std::vector<std::size_t>& shape) {
  const std::size_t d = shape.empty() ? 0 : shape.size() - 1;
  for (std::size_t i = 0; i <= d; ++i)
    if (shape[i] != shape[d - i]) return false;
  for (std::size_t i = 1; 2 * i <= d; ++i)
    if (shape[i - 1] > shape[i]) return false;
  return true;
}

namespace {

void side_violations(const Field& f, const ExactMatrix& a, const ExactMatrix& other, const std::vector<Scalar>& theta,
                     const std::vector<ExactMatrix>& es, const std::string& name, std::vector<std::string>& out) {
  const std::size_t n = a.rows();
  const std::size_t m = es.size();
  ExactMatrix sum(f, n, n), combo(f, n, n), product = ExactMatrix::identity(f, n);
  for (std::size_t i = 0; i < m; ++i) {
    sum = sum + es[i];
    combo = combo + es[i].scaled(theta[i]);
    product = product * (a - ExactMatrix::identity(f, n).scaled(theta[i]));
    for (std::size_t j = 0; j < m; ++j) {
      const ExactMatrix prod = es[i] * es[j];
      if (!(i == j ? prod == es[i] : prod.is_zero()))
        out.push_back(name + "_" + std::to_string(i) + " " + name + "_" + std::to_string(j) + " != delta " + name + "_" +
                      std::to_string(i));
      const std::size_t gap = i > j ? i - j : j - i;
      if (gap == 0) continue;
      const bool zero = (es[i] * other * es[j]).is_zero();
      if (gap > 1 && !zero)
        out.push_back(name + "_" + std::to_string(i) + " acts nontrivially on " + name + "_" + std::to_string(j) +
                      " at distance " + std::to_string(gap));
      if (gap == 1 && zero)
        out.push_back(name + "_" + std::to_string(i) + " and " + name + "_" + std::to_string(j) + " are not adjacent");
    }
  }
  if (!(sum == ExactMatrix::identity(f, n))) out.push_back("sum of " + name + "_i is not I");
  if (!(combo == a)) out.push_back("operator differs from sum theta_i " + name + "_i");
  if (!product.is_zero()) out.push_back("prod (operator - theta_i I) is not zero for " + name);
}

}  // namespace

std::vector<std::string> td_identity_violations(const TDSystemRecord& record) {
  std::vector<std::string> out;
  if (record.E.size() != record.d + 1 || record.E_star.size() != record.d + 1 || record.theta.size() != record.d + 1 ||
      record.theta_star.size() != record.d + 1) {
    out.push_back("record sequences do not have length d+1");
    return out;
  }
  side_violations(record.field, record.A, record.Astar, record.theta, record.E, "E", out);
  side_violations(record.field, record.Astar, record.A, record.theta_star, record.E_star, "E*", out);
  return out;
}

}  // namespace tdsharp
