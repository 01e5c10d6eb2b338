//! Acceptance criteria, one test each. Run with `--nocapture` to see the
//! PASS/FAIL line of every criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use crosscap::cc_engine::u_minus_of_code;
use crosscap::embedding::{face_count, realize, Diagram};
use crosscap::flype::enumerate_orbit;
use crosscap::oracle::{seifert_state, state_circles};
use crosscap::tables::{read_expected, verify};
use crosscap::{CodeFormat, DtCode, FaceColor, GaussCode, KnotName, TableSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(rel)
}

fn name(s: &str) -> KnotName {
    s.parse().unwrap()
}

/// Run one criterion, print its verdict, and fail the test on a panic or a
/// blown time budget.
fn criterion(id: &str, what: &str, budget: Duration, f: impl FnOnce() -> String) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    match outcome {
        Ok(detail) if elapsed <= budget => {
            println!("{id} PASS {what}: {detail} ({elapsed:.2?}, budget {budget:?})");
        }
        Ok(detail) => {
            println!("{id} FAIL {what}: {detail}, took {elapsed:.2?} over budget {budget:?}");
            panic!("{id} exceeded its time budget");
        }
        Err(e) => {
            println!("{id} FAIL {what} ({elapsed:.2?})");
            resume_unwind(e);
        }
    }
}

fn seed_tables() -> TableSet {
    let mut t = TableSet::new();
    t.ingest(&data("seed/knots.csv"), CodeFormat::Dt).unwrap();
    t
}

struct FullBuild {
    tables: TableSet,
    elapsed: Duration,
}

/// Tables through 12 crossings from the bundled public codes, built once.
fn full_build() -> &'static FullBuild {
    static BUILD: OnceLock<FullBuild> = OnceLock::new();
    BUILD.get_or_init(|| {
        let start = Instant::now();
        let mut tables = TableSet::new();
        for n in 3..=12 {
            tables
                .ingest(&data(&format!("knots/dt_{n:02}.csv")), CodeFormat::Dt)
                .unwrap();
        }
        tables.build_all(12).unwrap();
        FullBuild {
            tables,
            elapsed: start.elapsed(),
        }
    })
}

#[test]
fn ac1_dt_round_trip() {
    criterion("AC1", "DT round trip", Duration::from_secs(1), || {
        let trefoil: GaussCode = "1,2,3,1,2,3".parse().unwrap();
        assert_eq!(trefoil.to_dt().unwrap().entries(), &[4, 6, 2]);
        let mut count = 0;
        for n in 3..=13 {
            let text = std::fs::read_to_string(data(&format!("knots/dt_{n:02}.csv"))).unwrap();
            for line in text.lines().filter(|l| !l.starts_with('#')) {
                let (_, code) = line.split_once(',').unwrap();
                let dt: DtCode = code.parse().unwrap();
                assert_eq!(GaussCode::from_dt(&dt).unwrap().to_dt().unwrap(), dt);
                count += 1;
            }
        }
        format!("[1,2,3,1,2,3] -> [4,6,2]; {count} bundled codes invert exactly")
    });
}

#[test]
fn ac2_seven_crossing_dt_table() {
    criterion("AC2", "7-crossing DT table", Duration::from_secs(5), || {
        let mut t = seed_tables();
        t.build_ddt(7).unwrap();
        let expected: BTreeMap<DtCode, KnotName> = [
            ("8,10,12,14,2,4,6", "7_1"),
            ("4,10,14,12,2,8,6", "7_2"),
            ("6,10,12,14,2,4,8", "7_3"),
            ("6,12,10,14,2,4,8", "7_4"),
            ("4,10,12,14,2,8,6", "7_5"),
            ("4,10,14,12,2,6,8", "7_5"),
            ("4,8,12,2,14,6,10", "7_6"),
            ("4,8,12,10,2,14,6", "7_6"),
            ("4,8,10,12,2,14,6", "7_7"),
            ("4,8,12,14,2,6,10", "7_7"),
        ]
        .into_iter()
        .map(|(d, k)| (d.parse().unwrap(), name(k)))
        .collect();
        assert_eq!(t.d_dt[&7], expected);
        format!("{} (DT, name) pairs, exact", expected.len())
    });
}

#[test]
fn ac3_seven_crossing_splice_table() {
    criterion(
        "AC3",
        "7-crossing splice table",
        Duration::from_secs(5),
        || {
            let mut t = seed_tables();
            t.build_ddt(7).unwrap();
            t.build_dsplice(7).unwrap();
            let rows = [
                ("7_1", "0_1 0_1 0_1 0_1 0_1 0_1 0_1"),
                ("7_2", "6_1 5_1 5_1 6_1 6_1 6_1 6_1"),
                ("7_3", "6_1 3_1 3_1 3_1 3_1 6_1 6_1"),
                ("7_4", "6_2 3_1+3_1 6_2 6_2 6_2 6_2 6_2"),
                ("7_5", "6_2 5_2 5_2 4_1 4_1 4_1 6_2"),
                ("7_6", "6_1 5_2 5_2 6_2 6_2 6_3 6_3"),
                ("7_7", "6_2 6_3 6_3 3_1+3_1 6_3 6_3 6_2"),
            ];
            let level = &t.d_splice[&7];
            assert_eq!(level.len(), rows.len());
            for (knot, row) in rows {
                let expected: Vec<Vec<KnotName>> = row
                    .split(' ')
                    .map(|entry| entry.split('+').map(name).collect())
                    .collect();
                assert_eq!(level[&name(knot)], expected, "row {knot}");
            }
            "7 rows exact, including 3_1+3_1 at 7_4 crossing 2 and 7_7 crossing 4".into()
        },
    );
}

#[test]
fn ac4_eleven_and_twelve_crossing_values() {
    criterion(
        "AC4",
        "11/12-crossing crosscap numbers",
        Duration::from_secs(600),
        || {
            let build = full_build();
            assert!(build.elapsed <= Duration::from_secs(600));
            let cc = &build.tables.d_cc;
            let mut checked = 0;
            for (n, count) in [(11, 367), (12, 1288)] {
                let expected = read_expected(&data(&format!("expected/cc_{n}.csv"))).unwrap();
                assert_eq!(expected.len(), count);
                assert_eq!(cc.level(n).unwrap().len(), count);
                let report = verify(&expected, cc);
                assert!(report.is_clean(), "level {n}:\n{report}");
                checked += report.checked;
            }
            for (knot, value) in [
                ("11_367", 1),
                ("11_247", 2),
                ("12_722", 2),
                ("12_4", 6),
                ("12_1288", 4),
            ] {
                assert_eq!(cc.get(&name(knot)), Some(value), "{knot}");
            }
            format!(
                "{checked} values, 0 mismatches, anchors hold; pipeline through 12 took {:.2?}",
                build.elapsed
            )
        },
    );
}

#[test]
fn ac5_oracle_equivalence() {
    let build = full_build();
    criterion(
        "AC5",
        "oracle equals u- through 10 crossings",
        Duration::from_secs(120),
        || {
            let report = build.tables.verify_oracle(10).unwrap();
            assert!(report.is_clean(), "{report}");
            assert_eq!(report.checked, 196);
            format!("{} knots agree", report.checked)
        },
    );
}

#[test]
fn ac6_property_suite() {
    let build = full_build();
    criterion("AC6", "property suite", Duration::from_secs(120), || {
        let t = &build.tables;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

        // (a) reduced form is invariant under dihedral images
        let mut images = 0;
        for (knot, entry) in t.knots().filter(|(k, _)| k.crossings <= 9) {
            let len = entry.code.word().len();
            for _ in 0..100 {
                let image = entry.code.dihedral_image(rng.gen_range(0..len), rng.gen());
                assert_eq!(image.reduced_form(), entry.code, "{knot}");
                images += 1;
            }
        }

        // (b) every realized code traces n + 2 faces
        let mut realized = 0;
        let orbit_codes = t
            .d_dt
            .range(..=10)
            .flat_map(|(_, level)| level.keys())
            .map(|dt| GaussCode::from_dt(dt).unwrap());
        let stored = t.knots().map(|(_, e)| e.code.clone());
        for code in stored.chain(orbit_codes) {
            let r = realize(&code).unwrap();
            assert_eq!(face_count(&code, &r), code.crossings() + 2, "{code}");
            realized += 1;
        }

        // (c) the Seifert surface has even first Betti number
        for (knot, entry) in t.knots() {
            let d = Diagram::new(entry.code.clone()).unwrap();
            let l = state_circles(&d, seifert_state(&d));
            assert_eq!((d.crossings() + 1 - l) % 2, 0, "{knot}");
        }

        // (d) flype orbits agree from every member
        let mut orbits = 0;
        for (knot, entry) in t.knots().filter(|(k, _)| k.crossings <= 8) {
            let orbit = enumerate_orbit(&entry.code).unwrap();
            for dt in &orbit {
                let from_member = enumerate_orbit(&GaussCode::from_dt(dt).unwrap()).unwrap();
                assert_eq!(from_member, orbit, "{knot} from {dt}");
            }
            orbits += 1;
        }

        // (e) the recursion is additive on a composite diagram
        let composite: GaussCode = "1,2,3,1,2,3,4,5,6,4,5,6".parse().unwrap();
        assert_eq!(
            u_minus_of_code(&composite, &t.dt_index(), &t.d_cc).unwrap(),
            2
        );

        format!(
            "{images} dihedral images, {realized} codes with n+2 faces, {} Seifert parities, \
             {orbits} orbits, 3_1#3_1 -> 2",
            t.knots().count()
        )
    });
}

/// Faces as a multiset of boundaries, each rotated to start at its minimum.
fn canonical_faces<T: Ord + Copy>(faces: &[Vec<T>]) -> BTreeSet<Vec<T>> {
    faces
        .iter()
        .map(|f| {
            let start = (0..f.len()).min_by_key(|&i| f[i]).unwrap();
            f[start..].iter().chain(&f[..start]).copied().collect()
        })
        .collect()
}

#[test]
fn ac7_seven_seven_face_data() {
    criterion("AC7", "7_7 face data", Duration::from_secs(1), || {
        let code: GaussCode = "1,2,3,1,4,5,6,3,2,4,7,6,5,7".parse().unwrap();
        let d = Diagram::new(code).unwrap();
        let first: Vec<Vec<u32>> = vec![
            vec![1, 4, 7],
            vec![2, 1, 3],
            vec![5, 4, 2, 3, 6],
            vec![5, 6, 7],
        ];
        let second: Vec<Vec<u32>> = vec![
            vec![1, 2, 4],
            vec![2, 3],
            vec![4, 5, 7],
            vec![5, 6],
            vec![6, 3, 1, 7],
        ];
        let first_edges: Vec<Vec<usize>> = vec![
            vec![14, 4, 10],
            vec![8, 1, 3],
            vec![12, 5, 9, 2, 7],
            vec![13, 6, 11],
        ];
        let second_edges: Vec<Vec<usize>> = vec![
            vec![4, 1, 9],
            vec![2, 8],
            vec![10, 5, 13],
            vec![6, 12],
            vec![11, 7, 3, 14],
        ];

        let ours = |c: FaceColor| {
            (
                canonical_faces(&d.faces.crossings_around(c)),
                canonical_faces(&d.faces.edges_around(c)),
            )
        };
        let theirs = |faces: &[Vec<u32>], edges: &[Vec<usize>]| {
            (canonical_faces(faces), canonical_faces(edges))
        };
        let (a, b) = (ours(FaceColor::A), ours(FaceColor::B));
        let (p, q) = (theirs(&first, &first_edges), theirs(&second, &second_edges));
        let swapped = a == q && b == p;
        assert!((a == p && b == q) || swapped, "face data differs");
        format!(
            "crossings and edges around all 9 faces match{}",
            if swapped { " with colours swapped" } else { "" }
        )
    });
}
