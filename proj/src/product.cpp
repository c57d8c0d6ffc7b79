#include "ghk/product.hpp"

#include "ghk/error.hpp"

namespace ghk {

ProductArrow compose_product(ZSAction const& a, ProductArrow const& p,
                             ProductArrow const& q) {
  auto const& k = a.kgraph();
  auto const& g = a.groupoid();
  if (g.dom(p.g) != q.path.cod) {
    throw Error(ErrorKind::NotComposable,
                product_arrow_name(a, p) + " * " + product_arrow_name(a, q));
  }
  Path const moved = a.act(p.g, q.path);
  ArrowId const rest = a.restrict(p.g, q.path);
  return {k.compose(p.path, moved), g.compose(rest, q.g)};
}

std::string product_arrow_name(ZSAction const& a, ProductArrow const& p) {
  return "(" + a.kgraph().path_name(p.path) + "," + a.groupoid().name(p.g) +
         ")";
}

std::optional<ArrowId> Product::find(ProductArrow const& p) const {
  auto it = index.find(p);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Product build_product(ZSAction const& a, Degree const& bound) {
  auto const& k = a.kgraph();
  auto const& g = a.groupoid();
  if (bound.rank() != k.rank()) {
    throw Error(ErrorKind::BoundTooSmall,
                "bound " + bound.to_string() + " needs " +
                    std::to_string(k.rank()) + " components");
  }
  auto paths = k.enumerate_paths(bound);

  std::vector<ProductArrow> arrows;
  std::map<ProductArrow, ArrowId> index;
  std::vector<std::vector<ArrowId>> by_cod(k.num_objects());
  CategoryData d;
  d.objects = k.data().objects;
  d.identities.assign(k.num_objects(), kNoArrow);
  for (auto const& p : paths) {
    for (ArrowId x = 0; x < g.num_arrows(); ++x) {
      if (g.cod(x) != p.dom) continue;
      ArrowId const id = static_cast<ArrowId>(arrows.size());
      arrows.push_back({p, x});
      index.emplace(arrows.back(), id);
      by_cod[p.cod].push_back(id);
      d.arrows.push_back({product_arrow_name(a, arrows.back()), g.dom(x),
                          p.cod});
      if (p.is_identity() && g.is_identity(x)) d.identities[p.cod] = id;
    }
  }
  for (ArrowId i = 0; i < arrows.size(); ++i) {
    auto const& p = arrows[i];
    for (ArrowId j : by_cod[g.dom(p.g)]) {
      auto const& q = arrows[j];
      if (!(p.path.degree + q.path.degree).leq(bound)) continue;
      d.composites.push_back({i, j, index.at(compose_product(a, p, q))});
    }
  }
  d.bound = bound;

  auto category = FinCategory::validate(std::move(d));
  std::vector<Degree> deg;
  for (auto const& p : arrows) deg.push_back(p.path.degree);
  auto size = SizeFunctor::validate(category, std::move(deg), k.rank());

  std::vector<ArrowId> embed_path, embed_group;
  for (auto const& p : paths) {
    embed_path.push_back(index.at({p, g.identity(p.dom)}));
  }
  for (ArrowId x = 0; x < g.num_arrows(); ++x) {
    embed_group.push_back(index.at({k.identity(g.cod(x)), x}));
  }

  // Both embeddings are functors on the window, and every pair splits as
  // embed_path(x) embed_group(g). Injectivity is immediate from the keys.
  std::map<Path, std::size_t> path_index;
  for (std::size_t i = 0; i < paths.size(); ++i) path_index.emplace(paths[i], i);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = 0; j < paths.size(); ++j) {
      if (paths[i].dom != paths[j].cod) continue;
      if (!(paths[i].degree + paths[j].degree).leq(bound)) continue;
      auto const xy = path_index.at(k.compose(paths[i], paths[j]));
      if (category.compose(embed_path[i], embed_path[j]) != embed_path[xy]) {
        throw Error(ErrorKind::LemmaViolation,
                    "path embedding is not a functor at " +
                        k.path_name(paths[i]) + " * " +
                        k.path_name(paths[j]));
      }
    }
  }
  for (ArrowId x = 0; x < g.num_arrows(); ++x) {
    for (auto [y, xy] : g.right_composites(x)) {
      if (category.compose(embed_group[x], embed_group[y]) != embed_group[xy]) {
        throw Error(ErrorKind::LemmaViolation,
                    "groupoid embedding is not a functor at " + g.name(x) +
                        " * " + g.name(y));
      }
    }
  }
  for (ArrowId i = 0; i < arrows.size(); ++i) {
    auto const& p = arrows[i];
    ArrowId const x = embed_path[path_index.at(p.path)];
    if (category.compose(x, embed_group[p.g]) != i) {
      throw Error(ErrorKind::LemmaViolation,
                  category.name(i) + " does not split through the embeddings");
    }
  }

  return Product{std::move(arrows), std::move(category), std::move(size),
                 bound,             std::move(paths),    std::move(embed_path),
                 std::move(embed_group), std::move(index)};
}

ProductLawBundle verify_product_laws(Product const& p) {
  ProductLawBundle b;
  std::optional<FinCategory> c;
  try {
    c = FinCategory::validate(p.category.data());
    b.category_valid = true;
    SizeFunctor::validate(*c, p.size.degrees(), p.size.rank());
    b.size_functor_valid = true;
  } catch (Error const& e) {
    b.category_error = e.what();
    return b;
  }
  b.transversal = transversal(*c, p.size);
  b.wfp = check_wfp(*c, p.size);
  b.r_condition = check_r_condition(*c, p.size, b.transversal);
  b.left_cancellative = check_cancellative(*c, Side::Left);
  return b;
}

ProductLawBundle verify_product_laws(ZSAction const& a, Degree const& bound) {
  return verify_product_laws(build_product(a, bound));
}

}  // namespace ghk
