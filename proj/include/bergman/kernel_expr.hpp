#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bergman/domain.hpp"
#include "bergman/jet.hpp"

namespace bergman {

/// Distance below which an evaluation point is treated as sitting on a
/// removable singularity and evaluated through the exact limit.
inline constexpr double kSingularEps = 1e-8;

/// |K(c, c)| at or below this is a degenerate augmentation center.
inline constexpr double kDegeneracyTol = 1e-14;

enum class NodeKind {
  Base,
  RationalDivide,
  RankOneDeflate,
  DirectSumAugment,
  Transport,
};

enum class FormulaFormat { LaTeX, Plain };

class KernelNode;

/// Names assigned to nodes while a formula is written out.
class FormulaNames {
 public:
  explicit FormulaNames(FormulaFormat format) : format_(format) {}
  FormulaFormat format() const { return format_; }
  /// "K_3(z,w)"-style application of a named node to two argument strings.
  std::string call(const KernelNode* node, const std::string& z,
                   const std::string& w) const;
  std::string name(const KernelNode* node) const;
  void assign(const KernelNode* node, std::string name) { names_[node] = std::move(name); }
  bool has(const KernelNode* node) const { return names_.count(node) > 0; }

 private:
  FormulaFormat format_;
  std::map<const KernelNode*, std::string> names_;
};

class KernelNode {
 public:
  virtual ~KernelNode() = default;

  virtual NodeKind kind() const = 0;
  /// Taylor jet of F(z, u) = K(z, conj(u)) about (z0, u0).
  virtual Jet jet(Complex z0, Complex u0, int order_z, int order_w) const = 0;
  /// Direct evaluation of the node formula with no limit handling.
  virtual Complex naive(Complex z, Complex u) const = 0;
  virtual std::vector<const KernelNode*> children() const { return {}; }
  /// Centers of this node's removable singularities (not recursive).
  virtual std::vector<Complex> own_singular_centers() const { return {}; }
  /// Zero/pole centers this node introduces into the weight (not recursive).
  virtual std::vector<Complex> own_weight_centers() const { return {}; }
  /// Right-hand side of this node's definition in terms of its children.
  virtual std::string formula(const FormulaNames& names) const = 0;
};

/// Immutable handle to a kernel expression tree (a DAG when subtrees are
/// shared). Evaluation is pure and thread-safe.
class KernelExpr {
 public:
  KernelExpr(std::shared_ptr<const KernelNode> node, DomainSpec domain);

  const KernelNode& node() const { return *node_; }
  const std::shared_ptr<const KernelNode>& node_ptr() const { return node_; }
  const DomainSpec& domain() const { return domain_; }
  NodeKind kind() const { return node_->kind(); }

  /// K(z, w) including exact limits at removable singularities. Throws
  /// DomainViolation outside the domain.
  Complex operator()(Complex z, Complex w) const;
  /// Node-by-node direct evaluation; may be non-finite at removable
  /// singularities.
  Complex naive(Complex z, Complex w) const;
  /// dK/dz and dK/d(conj w).
  Complex d_dz(Complex z, Complex w) const;
  Complex d_dwbar(Complex z, Complex w) const;
  /// Jet of K about (z, w) in the variables (z, conj w).
  Jet jet(Complex z, Complex w, int order_z, int order_w) const;

  /// Removable-singularity centers anywhere in the tree.
  std::vector<Complex> singular_centers() const;
  /// Weight zero/pole centers anywhere in the tree.
  std::vector<Complex> weight_centers() const;

  void check_point(Complex p, const char* what) const;

 private:
  std::shared_ptr<const KernelNode> node_;
  DomainSpec domain_;
};

Complex eval_with_limits(const KernelExpr& k, Complex z, Complex w);

std::string to_formula(const KernelExpr& k, FormulaFormat format);

/// Number formatting used by formulas: 10 significant digits, complex values
/// parenthesised.
std::string format_number(Complex c, FormulaFormat format);
/// "(z-c)"-style factor text for a variable string.
std::string linear_factor(const std::string& var, Complex c, FormulaFormat format);

}  // namespace bergman
