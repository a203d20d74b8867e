#include "doctest.h"

#include "hfk/splitting.hpp"

#include "hfk/linalg.hpp"

using namespace hfk;

TEST_CASE("splitting of the n = 1 square") {
    SwapSplitting s = swap_splitting(1);
    CHECK(s.square.complex->rank() == 9);
    CHECK(s.sub->rank() == 9);       // 8n+1
    CHECK(s.complement.size() == 0); // 16n^2-16n
    CHECK(s.include.is_chain_map());
    CHECK(s.project.is_chain_map());
    CHECK(add(chain_commutator(s.homotopy),
              add(compose(s.project, s.square.map("phi")), compose(s.sub_phi, s.project)))
              .is_zero());
}

TEST_CASE("splitting of the n = 3 square") {
    SwapSplitting s = swap_splitting(3);
    CHECK(s.square.complex->rank() == 121); // 16n^2 - 8n + 1
    CHECK(s.sub->rank() == 25);             // 8n + 1
    CHECK(s.complement.size() == 96);       // 16n^2 - 16n
    // constructed with all structural checks enforced internally; verify the
    // advertised equivariance properties once more from outside
    const ChainMap& phi = s.square.map("phi");
    CHECK(compose(phi, s.include) == compose(s.include, s.sub_phi));
    ChainMap defect = add(compose(s.project, phi), compose(s.sub_phi, s.project));
    CHECK(add(chain_commutator(s.homotopy), defect).is_zero());
    // the retraction property
    CHECK(compose(s.project, s.include) == ChainMap::identity(s.sub));
    // the subcomplex carries the box: its involution moves the free corner,
    // with y1 (x) y-1 = box.t + s[y-1.y1] in the sub basis
    int v = s.sub->index_of("box.v");
    int t = s.sub->index_of("box.t");
    int yy = s.sub->index_of("s[y-1.y1]");
    Element img = s.sub_phi.apply(Element::gen(v));
    Element want = Element::gen(v) + wz(2, 2) * (Element::gen(t) + Element::gen(yy));
    CHECK(img == want);
}
