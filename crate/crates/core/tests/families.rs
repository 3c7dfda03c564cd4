use supertab::{
    build_family, census_oracle, kloosterman_oracle, orbit_census, ramanujan_oracle, reference_table_oracle, Analysis,
    ConstancyOptions, CycValue, FamilyName, FamilySpec, SymmetryKind, DEFAULT_TOL,
};

fn analysis(name: FamilyName, param: u64, d: Option<usize>) -> (FamilySpec, Analysis) {
    let spec = FamilySpec::new(name, param, d).unwrap();
    let a = Analysis::new(build_family(&spec).unwrap(), None).unwrap();
    (spec, a)
}

#[test]
fn every_family_verifies() {
    for name in FamilyName::ALL {
        let params: &[u64] = match name {
            FamilyName::Trivial | FamilyName::Sign => &[3, 4, 6, 7],
            FamilyName::Units => &[6, 12, 30],
            _ => &[3, 5, 7],
        };
        for &p in params {
            let (spec, a) = analysis(name, p, None);
            let v = a.verify(&ConstancyOptions::default(), DEFAULT_TOL);
            assert!(v.passed(), "{}: {:?}", spec.label(), v);
            let u = v.unitary.unwrap();
            assert!(u.symmetric.passed, "{} not symmetric: {}", spec.label(), u.symmetric.residual);
        }
    }
}

#[test]
fn j_symmetric_families_are_classified() {
    for name in [FamilyName::Toeplitz, FamilyName::Jsym3] {
        let (_, a) = analysis(name, 5, None);
        assert_eq!(a.witness.kind, SymmetryKind::JSymmetric);
        assert_eq!(orbit_census(a.superclasses()), orbit_census(a.supercharacters()));
        assert!(!a.superclasses().same_parts(a.supercharacters()));
    }
}

#[test]
fn toeplitz_census_and_locate() {
    let (spec, a) = analysis(FamilyName::Toeplitz, 3, Some(3));
    assert_eq!(orbit_census(a.superclasses()), census_oracle(&spec).unwrap());
    let m = a.group.modulus();
    let idx = a.superclasses().locate(&supertab::ModVector::new(m, [1, 1, 1])).unwrap();
    let orbit = &a.superclasses().orbits()[idx];
    assert_eq!(orbit.representative.entries(), &[1, 0, 0]);
    assert_eq!(orbit.size(), 9);
}

#[test]
fn jsym3_matches_reference_table() {
    for p in [3, 5, 7] {
        let (spec, a) = analysis(FamilyName::Jsym3, p, None);
        let want = reference_table_oracle(&spec, true).unwrap();
        assert_eq!(a.table.as_integers().unwrap(), want.entries);
    }
}

#[test]
fn kloosterman_entries() {
    for p in [5u64, 7, 11] {
        let (_, a) = analysis(FamilyName::Kloosterman, p, None);
        assert_eq!(a.table.rows(), p as usize + 2);
        let t = &a.table;
        for (i, xi) in a.supercharacters().orbits().iter().enumerate().skip(3) {
            for (j, yj) in a.superclasses().orbits().iter().enumerate().skip(3) {
                let s = xi.representative.entries()[1] as i64;
                let u = yj.representative.entries()[1] as i64;
                assert_eq!(xi.representative.entries()[0], 1);
                let want = kloosterman_oracle(p, 1, s * u);
                assert!((t.entry(i, j).to_complex() - want).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn ramanujan_entries() {
    for n in [6u64, 12, 30] {
        let (_, a) = analysis(FamilyName::Units, n, None);
        for (i, xi) in a.supercharacters().orbits().iter().enumerate() {
            let g = supertab::arith::gcd(xi.representative.entries()[0], n);
            for (j, yj) in a.superclasses().orbits().iter().enumerate() {
                let y = yj.representative.entries()[0] as i64;
                let e = a.table.entry(i, j);
                assert_eq!(e.as_integer(), Some(ramanujan_oracle(n / g, y)));
            }
        }
    }
}

#[test]
fn gauss_period_identity() {
    for p in [5u64, 7, 13] {
        let (_, a) = analysis(FamilyName::QuadraticResidues, p, None);
        assert_eq!(a.table.rows(), 3);
        let n = p as usize;
        let sign = if p % 4 == 1 { 1 } else { -1 };
        for j in 1..3 {
            let (sa, sb) = (a.table.entry(1, j), a.table.entry(2, j));
            assert_eq!(sa + sb, CycValue::from_int(n, -1));
            let diff = sa - sb;
            assert_eq!(&diff * &diff, CycValue::from_int(n, sign * p as i64));
        }
    }
}
