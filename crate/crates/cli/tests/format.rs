use bordermin::{Alphabet, Instance, Placement, Probe};
use bordermin_cli::{parse_instance, write_instance, InstanceFile};
use proptest::prelude::*;

fn instance_file() -> impl Strategy<Value = InstanceFile> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r, m)| {
        let n = r * m;
        (
            proptest::collection::vec("[ACGT]{1,4}", n),
            Just((r, m)),
            proptest::option::of(0u64..50),
            proptest::option::of(Just((0..n).collect::<Vec<usize>>()).prop_shuffle()),
            any::<bool>(),
        )
            .prop_map(|(probes, (r, m), budget, slots, extra_char)| {
                let chars = if extra_char { "TGCAX" } else { "ACGT" };
                let alphabet = Alphabet::new(chars.chars()).unwrap();
                let probes = probes.iter().map(|p| Probe::parse(&alphabet, p).unwrap()).collect();
                let instance = Instance::new(alphabet, probes, r, m).unwrap().with_budget(budget);
                let placement = slots.map(|s| Placement::new(&instance, s).unwrap());
                InstanceFile { instance, placement }
            })
    })
}

proptest! {
    #[test]
    fn parse_inverts_write(f in instance_file()) {
        let text = write_instance(&f);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn parser_never_panics(text in "(BMPE 1\n)?[0-9 ]{0,6}\n[ACGT #\n]{0,20}(placement\n[0-9 \n]{0,10})?(budget [0-9x]{0,3}\n)?") {
        let _ = parse_instance(&text);
    }
}
