#include <algorithm>
#include <map>

#include "minorank/disjoint.hpp"
#include "minorank/errors.hpp"
#include "minorank/minors.hpp"

namespace minorank {

namespace {

std::size_t factor_index(const Tensor& like, AxisMask part, const std::vector<std::size_t>& pos) {
  std::size_t idx = 0;
  for (int a : mask_axes(part)) idx = idx * like.extent(a) + pos[std::size_t(a)];
  return idx;
}

// All assignments of positions to the axes in S, written into copies of `base`.
std::vector<std::vector<std::size_t>> positions_over(const Tensor& like, AxisMask S, std::vector<std::size_t> base) {
  std::vector<int> axes = mask_axes(S);
  std::vector<std::size_t> shape, idx(axes.size(), 0);
  for (int a : axes) shape.push_back(like.extent(a));
  std::vector<std::vector<std::size_t>> out;
  do {
    for (std::size_t i = 0; i < axes.size(); ++i) base[std::size_t(axes[i])] = idx[i];
    out.push_back(base);
  } while (next_index(shape, idx));
  return out;
}

const Factor* factor_for(const RankTerm& term, AxisMask part) {
  for (const Factor& f : term.factors)
    if (f.part == part) return &f;
  return nullptr;
}

// A term on C split as g (on I) times h (on J), I and J in original axes.
struct SplitPiece {
  AxisMask I = 0, J = 0;
  std::vector<Elem> g, h;
};

RankTerm assemble(const RankTerm& base, AxisMask C, const SplitPiece& piece) {
  std::map<AxisMask, std::vector<Elem>> by_part;
  for (const Factor& f : base.factors)
    if (f.part != C) by_part[f.part] = f.values;
  by_part[piece.I] = piece.g;
  by_part[piece.J] = piece.h;
  RankTerm out;
  for (const auto& [part, vals] : by_part) out.partition.push_back(part);
  out.partition = canonical_partition(out.partition);
  for (AxisMask part : out.partition) out.factors.push_back(Factor{part, by_part[part]});
  return out;
}

std::vector<Partition> split_family(const PartitionFamily& R, const std::vector<AxisMask>& parts) {
  std::vector<Partition> cur = R.partitions();
  for (AxisMask C : parts) {
    std::vector<Partition> next;
    for (const Partition& P : cur) {
      if (std::find(P.begin(), P.end(), C) == P.end()) {
        next.push_back(P);
        continue;
      }
      for (const auto& [I, J] : bipartitions(C)) {
        Partition Q;
        for (AxisMask q : P)
          if (q != C) Q.push_back(q);
        Q.push_back(I);
        Q.push_back(J);
        next.push_back(canonical_partition(Q));
      }
    }
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end());
  cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
  return cur;
}

}  // namespace

// With `essential` the certificate may carry a modifier inside E, slice bounds
// are essential partition ranks over complement points outside E(C^c), and
// everything the construction pushes into E is collected into the output
// modifier.
static RankCertificate split_engine(const Tensor& t, const RankCertificate& cert, const std::vector<AxisMask>& parts,
                             std::size_t m, const OracleOptions& opt, bool essential) {
  const int d = t.order();
  const Field& f = t.field();
  const AxisMask full = full_mask(d);
  if (cert.modifier && !essential) fail(ErrorKind::InvalidInput, "transform needs a plain decomposition");
  if (!certifies(cert, t)) fail(ErrorKind::InvalidInput, "certificate does not evaluate to the tensor");
  // The terms evaluate to base = t + V.
  const Tensor base = cert.modifier ? t + *cert.modifier : t;
  for (AxisMask C : parts)
    if (mask_size(C) < 2 || (C & ~full) || C == full) fail(ErrorKind::BadAxisSet, "split parts need 2 <= |C| < d");

  // Which designated part each term carries; parts strictly containing a
  // designated part would leave slices of unbounded rank.
  std::vector<int> group(cert.terms.size(), -1);
  for (std::size_t ti = 0; ti < cert.terms.size(); ++ti) {
    for (AxisMask q : cert.terms[ti].partition)
      for (std::size_t ci = 0; ci < parts.size(); ++ci) {
        if (q == parts[ci]) {
          if (group[ti] >= 0) fail(ErrorKind::InvalidInput, "term carries two designated parts");
          group[ti] = int(ci);
        } else if ((q & parts[ci]) == parts[ci]) {
          fail(ErrorKind::InvalidInput, "a term part strictly contains a designated part");
        }
      }
  }

  RankCertificate out;
  out.family = PartitionFamily(d, split_family(cert.family, parts));
  out.notion = notion_name(out.family);
  for (std::size_t ti = 0; ti < cert.terms.size(); ++ti)
    if (group[ti] < 0) out.terms.push_back(cert.terms[ti]);

  for (std::size_t ci = 0; ci < parts.size(); ++ci) {
    const AxisMask C = parts[ci], Cc = full & ~C;
    RankMemo memo(PartitionFamily::partition_rank(mask_size(C)), opt);
    const auto Y = positions_over(t, Cc, std::vector<std::size_t>(std::size_t(d), 0));
    auto cpos = [&](const std::vector<std::size_t>& y) {
      std::vector<std::size_t> v;
      for (int a : mask_axes(Cc)) v.push_back(y[std::size_t(a)]);
      return v;
    };
    const PartitionFamily prC = PartitionFamily::partition_rank(mask_size(C));
    const DiagonalSet ECc(t.axes(), Cc);
    std::vector<std::size_t> off;  // complement points usable by the duals
    for (std::size_t yi = 0; yi < Y.size(); ++yi) {
      std::vector<Label> labels;
      for (int a = 0; a < d; ++a) labels.push_back(t.axis(a)[Y[yi][std::size_t(a)]]);
      if (essential && ECc.contains(labels)) continue;
      off.push_back(yi);
      Tensor sl = c_slice(t, C, cpos(Y[yi]));
      bool over = essential ? !essential_rank_decide(sl, prC, m, opt).has_value() : memo.at_least(sl, m + 1);
      if (over) fail(ErrorKind::SliceBoundViolated, "a slice has partition rank above " + std::to_string(m));
    }

    std::vector<std::size_t> G;
    for (std::size_t ti = 0; ti < cert.terms.size(); ++ti)
      if (group[ti] == int(ci)) G.push_back(ti);
    if (G.empty()) continue;

    // A_i on the complement, B_i on C.
    std::vector<FieldVector> A;
    std::vector<std::vector<Elem>> B;
    for (std::size_t ti : G) {
      const RankTerm& term = cert.terms[ti];
      FieldVector a(off.size());
      for (std::size_t k = 0; k < off.size(); ++k) {
        Elem v = 1;
        for (const Factor& fac : term.factors)
          if (fac.part != C) v = f.mul(v, fac.values[factor_index(t, fac.part, Y[off[k]])]);
        a[k] = v;
      }
      A.push_back(std::move(a));
      B.push_back(factor_for(term, C)->values);
    }
    // Dependent A_j are folded into the independent ones.
    std::vector<std::size_t> indep = independent_subfamily(f, A);
    std::vector<FieldVector> Ai;
    for (std::size_t k : indep) Ai.push_back(A[k]);
    std::vector<std::vector<Elem>> Bi;
    for (std::size_t k : indep) Bi.push_back(B[k]);
    for (std::size_t j = 0; j < A.size(); ++j) {
      if (std::find(indep.begin(), indep.end(), j) != indep.end()) continue;
      // Off E(C^c) the remainder vanishes; on E(C^c) it joins the modifier.
      auto c = solve_combination(f, Ai, A[j]);
      if (!c) fail(ErrorKind::VerificationFailed, "dependent coefficient function outside the span");
      for (std::size_t k = 0; k < Ai.size(); ++k)
        if ((*c)[k]) axpy(f, Bi[k], (*c)[k], B[j]);
    }
    if (Ai.empty()) continue;

    // u_i . A_k = delta_ik, all supported on |support| = r complement points.
    DualBasis dual = dual_basis(f, Ai);
    for (auto& k : dual.support) k = off[k];
    for (auto& du : dual.duals) {
      FieldVector full_u(Y.size(), 0);
      for (std::size_t k = 0; k < off.size(); ++k) full_u[off[k]] = du[k];
      du = std::move(full_u);
    }
    // Essential mode: slice certificates for base_y + W_y, W_y inside E(C).
    std::map<std::size_t, RankCertificate> slice_cert;
    for (std::size_t yi : dual.support) {
      Tensor sl = c_slice(base, C, cpos(Y[yi]));
      slice_cert[yi] = essential ? essential_rank_exact(sl, prC, opt).certificate : rrank_exact(sl, prC, opt).certificate;
    }

    const auto Cpos = positions_over(t, C, std::vector<std::size_t>(std::size_t(d), 0));
    for (std::size_t i = 0; i < Ai.size(); ++i) {
      const FieldVector& u = dual.duals[i];
      std::vector<SplitPiece> pieces;
      // B_i = sum_y u_i(y) T_y - sum_F sum_y u_i(y) F_y.
      for (std::size_t yi : dual.support) {
        if (!u[yi]) continue;
        for (const RankTerm& st : slice_cert[yi].terms) {
          SplitPiece pc;
          pc.I = expand_mask(st.factors[0].part, C);
          pc.J = expand_mask(st.factors[1].part, C);
          pc.g = st.factors[0].values;
          for (auto& v : pc.g) v = f.mul(v, u[yi]);
          pc.h = st.factors[1].values;
          pieces.push_back(std::move(pc));
        }
      }
      const Elem minus_one = f.neg(1);
      for (std::size_t ti = 0; ti < cert.terms.size(); ++ti) {
        if (group[ti] == int(ci)) continue;
        const RankTerm& F = cert.terms[ti];
        std::vector<const Factor*> meet;
        const Factor* inside = nullptr;
        for (const Factor& fac : F.factors)
          if (fac.part & C) {
            meet.push_back(&fac);
            if (!inside && (fac.part & ~C) == 0) inside = &fac;
          }
        if (inside) {
          // a_I(x_I) * sum_y u(y) prod_{J != I} a_J: one term.
          SplitPiece pc;
          pc.I = inside->part;
          pc.J = C & ~inside->part;
          pc.g = inside->values;
          const auto Jpos = positions_over(t, pc.J, std::vector<std::size_t>(std::size_t(d), 0));
          pc.h.assign(Jpos.size(), 0);
          for (std::size_t yi : dual.support) {
            if (!u[yi]) continue;
            for (std::size_t xi = 0; xi < Jpos.size(); ++xi) {
              std::vector<std::size_t> pos = Jpos[xi];
              for (int a : mask_axes(Cc)) pos[std::size_t(a)] = Y[yi][std::size_t(a)];
              Elem v = f.mul(u[yi], minus_one);
              for (const Factor& fac : F.factors)
                if (&fac != inside) v = f.mul(v, fac.values[factor_index(t, fac.part, pos)]);
              pc.h[xi] = f.add(pc.h[xi], v);
            }
          }
          pieces.push_back(std::move(pc));
          continue;
        }
        if (meet.size() < 2) fail(ErrorKind::VerificationFailed, "term meets the split part only once");
        const Factor* first = meet[0];
        for (std::size_t yi : dual.support) {
          if (!u[yi]) continue;
          Elem scalar = f.mul(u[yi], minus_one);
          for (const Factor& fac : F.factors)
            if (!(fac.part & C)) scalar = f.mul(scalar, fac.values[factor_index(t, fac.part, Y[yi])]);
          SplitPiece pc;
          pc.I = first->part & C;
          pc.J = C & ~pc.I;
          auto Ipos = positions_over(t, pc.I, Y[yi]);
          auto Jpos = positions_over(t, pc.J, Y[yi]);
          for (const auto& pos : Ipos) pc.g.push_back(f.mul(scalar, first->values[factor_index(t, first->part, pos)]));
          for (const auto& pos : Jpos) {
            Elem v = 1;
            for (const Factor* fac : meet)
              if (fac != first) v = f.mul(v, fac->values[factor_index(t, fac->part, pos)]);
            pc.h.push_back(v);
          }
          pieces.push_back(std::move(pc));
        }
      }
      // The pieces sum to B_i; check before emitting.
      std::vector<Elem> sum(Cpos.size(), 0);
      for (const SplitPiece& pc : pieces)
        for (std::size_t xi = 0; xi < Cpos.size(); ++xi)
          sum[xi] = f.add(sum[xi], f.mul(pc.g[factor_index(t, pc.I, Cpos[xi])], pc.h[factor_index(t, pc.J, Cpos[xi])]));
      if (!essential && sum != Bi[i]) fail(ErrorKind::VerificationFailed, "dual functional did not recover B_i");
      const RankTerm& base = cert.terms[G[indep[i]]];
      for (const SplitPiece& pc : pieces) {
        bool zero_g = std::all_of(pc.g.begin(), pc.g.end(), [](Elem e) { return e == 0; });
        bool zero_h = std::all_of(pc.h.begin(), pc.h.end(), [](Elem e) { return e == 0; });
        if (zero_g || zero_h) continue;
        out.terms.push_back(assemble(base, C, pc));
      }
    }
  }
  if (essential) {
    Tensor mod = evaluate_terms(t, out.terms) - t;
    if (!supported_in_diagonal(mod)) fail(ErrorKind::VerificationFailed, "transform changed the tensor off E");
    if (!mod.is_zero()) out.modifier = std::move(mod);
  }
  if (!certifies(out, t)) fail(ErrorKind::VerificationFailed, "transformed certificate does not evaluate to the tensor");
  return out;
}

RankCertificate split_parts_transform(const Tensor& t, const RankCertificate& cert, const std::vector<AxisMask>& parts,
                                      std::size_t m, const OracleOptions& opt) {
  return split_engine(t, cert, parts, m, opt, false);
}

RankCertificate equivalence_transform(const Tensor& t, const RankCertificate& cert, std::size_t m,
                                      const OracleOptions& opt) {
  if (cert.family.is_tensor_rank()) fail(ErrorKind::InvalidInput, "tensor rank has no down-shadow");
  DownShadow ds = down_shadow(cert.family);
  RankCertificate out = split_parts_transform(t, cert, {ds.largest}, m, opt);
  if (!PartitionFamily(t.order(), out.family.partitions()).subset_of(ds.shadow))
    fail(ErrorKind::VerificationFailed, "split family leaves the down-shadow");
  out.family = ds.shadow;
  out.notion = notion_name(out.family);
  const std::size_t l = cert.value();
  if (out.value() > l * (l * m + l * l + 1)) fail(ErrorKind::VerificationFailed, "transform exceeded l(lm+l^2+1) terms");
  return out;
}

RankCertificate slice_to_tensor_transform(const Tensor& t, const RankCertificate& cert, std::size_t m,
                                          const OracleOptions& opt) {
  if (t.order() != 3) fail(ErrorKind::InvalidInput, "slice to tensor rank transform is for order 3");
  RankCertificate out = split_parts_transform(t, cert, {0b110, 0b101, 0b011}, m, opt);
  out.family = PartitionFamily::tensor_rank(3);
  out.notion = "tr";
  const std::size_t s = cert.value();
  if (out.value() > m * s * s) fail(ErrorKind::VerificationFailed, "transform exceeded m sr^2 terms");
  if (!certifies(out, t)) fail(ErrorKind::VerificationFailed, "transformed certificate is not a tensor rank one");
  return out;
}

std::size_t essential_slice_bound(const Tensor& t, AxisMask C, const OracleOptions& opt) {
  const int d = t.order();
  const AxisMask Cc = full_mask(d) & ~C;
  if (C == 0 || Cc == 0 || (C & ~full_mask(d))) fail(ErrorKind::BadAxisSet, "slice axes must be a proper nonempty subset");
  const DiagonalSet ECc(t.axes(), Cc);
  const PartitionFamily prC = PartitionFamily::partition_rank(mask_size(C));
  std::size_t m = 0;
  for (const auto& y : positions_over(t, Cc, std::vector<std::size_t>(std::size_t(d), 0))) {
    std::vector<Label> labels;
    for (int a = 0; a < d; ++a) labels.push_back(t.axis(a)[y[std::size_t(a)]]);
    if (ECc.contains(labels)) continue;
    std::vector<std::size_t> cy;
    for (int a : mask_axes(Cc)) cy.push_back(y[std::size_t(a)]);
    m = std::max(m, essential_rank_exact(c_slice(t, C, cy), prC, opt).value);
  }
  return m;
}

RankCertificate essential_equivalence_reduce(const Tensor& t, const RankCertificate& cert, std::size_t m,
                                             const OracleOptions& opt) {
  if (cert.family.is_tensor_rank()) fail(ErrorKind::InvalidInput, "tensor rank has no down-shadow");
  const DownShadow ds = down_shadow(cert.family);
  RankCertificate out = split_engine(t, cert, {ds.largest}, m, opt, true);
  if (!PartitionFamily(t.order(), out.family.partitions()).subset_of(ds.shadow))
    fail(ErrorKind::VerificationFailed, "split family leaves the down-shadow");
  out.family = ds.shadow;
  out.notion = notion_name(out.family);
  const std::size_t l = cert.value(), d = std::size_t(t.order()), dp = std::size_t(mask_size(ds.largest));
  std::size_t bound = l * l * (m + dp * (d - dp)) + l * l * l + l;
  if (d == 3 && cert.family.size() == 1) bound = std::min(bound, (m + 2) * l * l);
  if (out.value() > bound)
    fail(ErrorKind::VerificationFailed, "essential transform exceeded " + std::to_string(bound) + " terms");
  return out;
}

RankCertificate essential_tensor_chain(const Tensor& t, const RankCertificate& cert, const OracleOptions& opt,
                                       std::vector<std::size_t>* steps) {
  RankCertificate cur = cert;
  for (int guard = 0; !cur.family.is_tensor_rank(); ++guard) {
    if (guard > (1 << t.order())) fail(ErrorKind::VerificationFailed, "down-shadow chain too long");
    const std::size_t m = essential_slice_bound(t, largest_part(cur.family), opt);
    cur = essential_equivalence_reduce(t, cur, m, opt);
    if (steps) steps->push_back(cur.value());
  }
  return cur;
}

}  // namespace minorank
