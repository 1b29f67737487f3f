use bp_engine::coproduct::{coproduct, CoproductScheme};
use bp_engine::{
    parse_expression, Algebra, Element, Fp, Generator, Grading, Monomial, Prime, Strategy as Rewrite, TensorElement,
};
use proptest::prelude::*;

fn prime(q: u32) -> Prime {
    Prime::new(q).unwrap()
}

fn generator(max_index: u32) -> impl Strategy<Value = Generator> {
    prop_oneof![Just(Generator::Beta), (0..=max_index).prop_map(Generator::Power)]
}

fn word(max_len: usize, max_index: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(generator(max_index), 0..=max_len).prop_map(Monomial::new)
}

fn element(q: u32, max_len: usize, max_index: u32) -> impl Strategy<Value = Element> {
    let p = prime(q);
    prop::collection::vec((word(max_len, max_index), 0..q), 0..5)
        .prop_map(move |terms| Element::from_terms(p, terms.into_iter().map(|(m, c)| (m, p.reduce(c as i64)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normal_forms_are_admissible_and_homogeneous(q in prop::sample::select(vec![3u32, 5]), m in word(6, 9)) {
        let p = prime(q);
        let alg = Algebra::new(p);
        let g = Grading::standard(p);
        let d = g.bidegree_of(&m).unwrap();
        let nf = alg.normalize_monomial(&m).unwrap();
        for (u, _) in nf.terms() {
            prop_assert!(u.is_admissible(p), "{u} from {m}");
            prop_assert_eq!(g.bidegree_of(u).unwrap(), d);
        }
        // also homogeneous for the grading with |b| = (1, 1)
        let c = Grading::subalgebra_c(p);
        let dc = c.bidegree_of(&m).unwrap();
        for (u, _) in nf.terms() {
            prop_assert_eq!(c.bidegree_of(u).unwrap(), dc);
        }
    }

    #[test]
    fn normalize_is_idempotent_and_linear(x in element(3, 5, 6), y in element(3, 5, 6), c in 0u32..3) {
        let p = prime(3);
        let alg = Algebra::new(p);
        let nx = alg.normalize(&x).unwrap();
        prop_assert_eq!(&alg.normalize(&nx).unwrap(), &nx);
        let ny = alg.normalize(&y).unwrap();
        let c = p.reduce(c as i64);
        let mut combo = x.clone();
        combo.add_scaled(p, &y, c);
        let mut want = nx.clone();
        want.add_scaled(p, &ny, c);
        prop_assert_eq!(alg.normalize(&combo).unwrap(), want);
    }

    #[test]
    fn strategies_agree(q in prop::sample::select(vec![3u32, 5, 7]), m in word(6, 8)) {
        let p = prime(q);
        let left = Algebra::with_options(p, Rewrite::Leftmost, 1_000_000);
        let right = Algebra::with_options(p, Rewrite::Rightmost, 1_000_000);
        prop_assert_eq!(left.normalize_monomial(&m).unwrap(), right.normalize_monomial(&m).unwrap());
    }

    #[test]
    fn print_then_parse_is_identity(e in element(5, 5, 7)) {
        let p = prime(5);
        let alg = Algebra::new(p);
        let nf = alg.normalize(&e).unwrap();
        let text = nf.to_text(p);
        prop_assert_eq!(parse_expression(&text, p).unwrap(), nf);
    }

    #[test]
    fn tensor_product_is_bilinear(
        a in element(3, 2, 3), b in element(3, 2, 3), c in element(3, 2, 3), k in 0u32..3,
    ) {
        let p = prime(3);
        let alg = Algebra::new(p);
        let g = Grading::standard(p);
        let t = |x: &Element, y: &Element| TensorElement::of_elements(p, &alg.normalize(x).unwrap(), &alg.normalize(y).unwrap());
        let x = t(&a, &b);
        let y = t(&b, &c);
        let z = t(&c, &a);
        let k = p.reduce(k as i64);
        let mut sum = y.clone();
        sum.add_scaled(p, &z, k);
        let lhs = x.multiply(&sum, &g, &alg).unwrap();
        let mut rhs = x.multiply(&y, &g, &alg).unwrap();
        rhs.add_scaled(p, &x.multiply(&z, &g, &alg).unwrap(), k);
        prop_assert_eq!(lhs, rhs);
    }
}

fn words_up_to(len: usize, max_index: u32) -> Vec<Monomial> {
    let letters: Vec<Generator> =
        std::iter::once(Generator::Beta).chain((0..=max_index).map(Generator::Power)).collect();
    let mut out = vec![Monomial::unit()];
    let mut frontier = vec![Vec::<Generator>::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &letters {
                let mut v = w.clone();
                v.push(*g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(Monomial::new));
        frontier = next;
    }
    out
}

#[test]
fn graded_commutation_on_disjoint_slots() {
    let p = prime(3);
    let alg = Algebra::new(p);
    let g = Grading::standard(p);
    let admissible: Vec<Monomial> = words_up_to(2, 4).into_iter().filter(|m| m.is_admissible(p)).collect();
    for a in &admissible {
        for d in &admissible {
            let a1 = TensorElement::pure(a.clone(), Monomial::unit());
            let d1 = TensorElement::pure(Monomial::unit(), d.clone());
            let ad = TensorElement::pure(a.clone(), d.clone());
            assert_eq!(a1.multiply(&d1, &g, &alg).unwrap(), ad);
            let sign = p.sign((g.is_odd(a) && g.is_odd(d)) as u64);
            assert_eq!(d1.multiply(&a1, &g, &alg).unwrap(), ad.scale(p, sign), "{a} {d}");
        }
    }
}

#[test]
fn tensor_product_associates_on_slot_pure_terms() {
    let p = prime(3);
    let alg = Algebra::new(p);
    let g = Grading::standard(p);
    let words: Vec<Monomial> = words_up_to(2, 3).into_iter().filter(|m| m.is_admissible(p)).collect();
    for a in &words {
        for b in &words {
            for c in words.iter().step_by(3) {
                let x = TensorElement::pure(a.clone(), Monomial::unit());
                let y = TensorElement::pure(Monomial::unit(), b.clone());
                let z = TensorElement::pure(c.clone(), Monomial::unit());
                let l = x.multiply(&y, &g, &alg).unwrap().multiply(&z, &g, &alg).unwrap();
                let r = x.multiply(&y.multiply(&z, &g, &alg).unwrap(), &g, &alg).unwrap();
                assert_eq!(l, r, "{a} {b} {c}");
            }
        }
    }
}

#[test]
fn coproduct_is_multiplicative() {
    let p = prime(3);
    let alg = Algebra::new(p);
    let scheme = CoproductScheme::singer(p);
    let g = Grading::standard(p);
    let words: Vec<Monomial> = words_up_to(2, 4).into_iter().filter(|m| m.is_admissible(p)).collect();
    for x in &words {
        for y in &words {
            let product = alg.multiply_monomials(x, y).unwrap();
            let lhs = coproduct(&product, &scheme, &alg).unwrap();
            let rhs = coproduct(&Element::monomial(x.clone()), &scheme, &alg)
                .unwrap()
                .multiply(&coproduct(&Element::monomial(y.clone()), &scheme, &alg).unwrap(), &g, &alg)
                .unwrap();
            assert_eq!(lhs, rhs, "{x} * {y}");
        }
    }
}

#[test]
fn singer_coproduct_is_homogeneous() {
    for q in [3u32, 5] {
        let p = prime(q);
        let alg = Algebra::new(p);
        let scheme = CoproductScheme::singer(p);
        let g = Grading::standard(p);
        for m in words_up_to(3, 4).into_iter().filter(|m| m.is_admissible(p)) {
            let d = g.bidegree_of(&m).unwrap();
            for ([u, v], _) in coproduct(&Element::monomial(m.clone()), &scheme, &alg).unwrap().terms() {
                let (du, dv) = (g.bidegree_of(u).unwrap(), g.bidegree_of(v).unwrap());
                assert_eq!((du.s, dv.s), (d.s, d.s), "{m}: {u} ⊗ {v}");
                assert_eq!(du.n + dv.n, d.n, "{m}: {u} ⊗ {v}");
            }
        }
    }
}

#[test]
fn zero_sides_contribute_nothing() {
    let p = prime(5);
    let alg = Algebra::new(p);
    let mut t = TensorElement::pure(Monomial::new(vec![Generator::Beta, Generator::Beta]), Monomial::unit());
    t.add_term(p, [Monomial::unit(), Monomial::new(vec![Generator::Power(0)])], Fp::ONE);
    let n = t.normalize(&alg).unwrap();
    assert_eq!(n, TensorElement::pure(Monomial::unit(), Monomial::new(vec![Generator::Power(0)])));
}

#[test]
fn a_wrong_bockstein_sign_is_caught() {
    // with |b| even the cross terms of (b ⊗ 1 + 1 ⊗ b)^2 no longer cancel
    let p = prime(3);
    let alg = Algebra::new(p);
    let image = CoproductScheme::singer(p).beta_image().clone();
    let broken = CoproductScheme::custom("even-beta", image, Grading::parity(false, false)).unwrap();
    let r = bp_engine::check_relation_ar1(&broken, &alg).unwrap();
    assert!(!r.passed());
    assert_eq!(r.failures[0].residual.text, "2 (b ⊗ b)");
}
