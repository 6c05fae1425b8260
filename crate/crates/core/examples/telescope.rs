//! Telescope of a directed system of chain complexes and its filtration report.

use std::collections::BTreeMap;

use ainfkit::graded_ainf::LinComb;
use ainfkit::hochschild::{telescope, telescope_filtration_report, ChainComplex, ChainMap, TelescopeData};
use ainfkit::novikov::NovikovScalar;

fn main() {
    // C: ℚa → ℚb by 1, plus ℚc in degree 2.
    let spaces = BTreeMap::from([(0, vec!["a".to_string()]), (1, vec!["b".to_string()]), (2, vec!["c".to_string()])]);
    let d = BTreeMap::from([(0, vec![LinComb::single(0, NovikovScalar::one())])]);
    let c = ChainComplex::new(spaces, d).unwrap();

    // Connecting map 2·id + (dh + hd) with h = id: C^1 → C^0, homotopic to 2·id.
    let mut k = ChainMap::identity(&c);
    k.components.insert(0, vec![LinComb::single(0, NovikovScalar::from_int(2))]);
    k.components.insert(1, vec![LinComb::single(0, NovikovScalar::from_int(2))]);

    let t = TelescopeData::new(vec![c.clone(), c.clone(), c.clone()], vec![k.clone(), k]).unwrap();
    let tel = telescope(&t).unwrap();
    println!("telescope: {} generators, homology {:?}", tel.total_dim(), tel.homology_ranks().unwrap());
    println!("stage homology {:?}", c.homology_ranks().unwrap());

    let rep = telescope_filtration_report(&t).unwrap();
    println!("top stage matches: {}", rep.top_stage_matches);
    println!("inclusions are quasi-isomorphisms: {}", rep.inclusions_quasi_iso);
    println!("connecting maps compatible: {}", rep.connecting_maps_compatible);
    println!("{}", t.to_json_string());
}
