#include "zassen/groupspec.hpp"

#include "zassen/error.hpp"

namespace zassen {

GroupSpec GroupSpec::magnus(Scalar p, std::size_t d, std::size_t m) {
  GroupSpec s;
  s.kind = GroupKind::Magnus;
  s.p = p;
  s.d = d;
  s.m = m;
  return s;
}

GroupSpec GroupSpec::unipotent(Scalar p, std::size_t size) {
  GroupSpec s;
  s.kind = GroupKind::Unipotent;
  s.p = p;
  s.size = size;
  return s;
}

GroupSpec GroupSpec::cyclic(Scalar p, std::size_t order) {
  GroupSpec s;
  s.kind = GroupKind::Cyclic;
  s.p = p;
  s.order = order;
  return s;
}

const char* to_string(GroupKind k) {
  switch (k) {
    case GroupKind::Magnus: return "magnus";
    case GroupKind::Unipotent: return "matrix-unipotent";
    case GroupKind::Cyclic: return "cyclic";
  }
  return "?";
}

std::string GroupSpec::name() const {
  const auto ps = std::to_string(p);
  switch (kind) {
    case GroupKind::Magnus: return "magnus(" + ps + "," + std::to_string(d) + "," + std::to_string(m) + ")";
    case GroupKind::Cyclic: return "cyclic(" + ps + "," + std::to_string(order) + ")";
    case GroupKind::Unipotent:
      return "unipotent(" + ps + "," + std::to_string(size) + (matrices ? ",custom" : "") + ")";
  }
  return "?";
}

BuiltGroup build_group(const GroupSpec& spec) {
  BuiltGroup b{spec, {}, {}, {}};
  switch (spec.kind) {
    case GroupKind::Magnus: {
      require(spec.d >= 1 && spec.m >= 1, "magnus needs d >= 1 and m >= 1");
      auto mg = build_magnus_group(spec.p, spec.d, spec.m);
      b.third_oracle = degree_filtration(mg);
      b.third_oracle_name = "degree";
      b.group = std::move(mg.group);
      return b;
    }
    case GroupKind::Cyclic: b.group = build_cyclic_group(spec.p, spec.order); break;
    case GroupKind::Unipotent: b.group = build_unipotent_group(spec.p, spec.size, spec.matrices); break;
  }
  b.third_oracle = dimension_subgroups(b.group);
  b.third_oracle_name = "dimension-subgroups";
  return b;
}

HypothesisCheck check_hypothesis(const BuiltGroup& g, const Filtration& f, std::size_t n) {
  HypothesisCheck h;
  const auto& grp = g.group;
  h.free_rank = elementary_quotient_basis(grp, f.term(1), f.term(2)).dim();
  std::optional<bool> closed;
  if (g.spec.kind == GroupKind::Magnus) closed = g.spec.m >= n;
  if (g.spec.kind == GroupKind::Cyclic) closed = g.spec.order >= n;
  std::optional<bool> by_order;
  if (n <= 1 || h.free_rank == 0) {
    by_order = true;
  } else {
    try {
      const auto free_quotient = build_magnus_group(grp.p(), h.free_rank, n);
      by_order = free_quotient.group.order() * f.term(n).order() == grp.order();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TooLarge) throw;
    }
  }
  if (closed && by_order && *closed != *by_order)
    throw Error(ErrorKind::Contract, "hypothesis checks disagree");
  if (by_order) {
    h.status = *by_order ? "holds" : "fails";
    h.method = "order-comparison";
  } else if (closed) {
    h.status = *closed ? "holds" : "fails";
    h.method = "closed-form";
  } else {
    h.status = "assumed";
    h.method = "not-computable";
  }
  return h;
}

}  // namespace zassen
