use std::path::PathBuf;
use std::sync::Arc;

use piekit::corpus::{equalizer_collapse, thicken, thickening_sections};
use piekit::fincat::{build, FinFunctor};
use piekit::schema::{
    from_json, AlgebraDoc, CatValuedDoc, DiagramMapDoc, PresentationDoc, SignatureDoc, SignatureMapDoc,
    WEIGHT_V1,
};
use piekit::sf2monad::{check_algebra, idempotent_z3_carrier, monoidal_presentation, Signature, SignatureMap};
use piekit::weights::{is_pie_weight, named_weight_str};
use piekit::Error;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    std::fs::read_to_string(p).expect("shipped data file")
}

#[test]
fn shipped_weights_classify() {
    for (file, pie) in [
        ("inserter.json", true),
        ("equifier.json", true),
        ("comma.json", true),
        ("product2.json", true),
        ("equalizer.json", false),
        ("idempotent_splitting.json", false),
    ] {
        let doc: CatValuedDoc = from_json(&data(file)).unwrap();
        let w = doc.to_cat_valued(Some(WEIGHT_V1)).unwrap();
        assert_eq!(is_pie_weight(&w).0, pie, "{file}");
    }
}

#[test]
fn shipped_presentation_and_signature() {
    let p: PresentationDoc = from_json(&data("monoidal.json")).unwrap();
    let p = p.to_presentation().unwrap();
    assert_eq!(p.equations().len(), 9);
    let s: SignatureDoc = from_json(&data("binary.json")).unwrap();
    assert_eq!(s.to_signature().unwrap().support(), vec![2]);
}

#[test]
fn weights_round_trip() {
    for name in ["inserter", "comma", "equifier", "product(3)", "idempotent_splitting"] {
        let w = named_weight_str(name).unwrap();
        let text = serde_json::to_string(&CatValuedDoc::from_cat_valued(&w, WEIGHT_V1)).unwrap();
        let back = from_json::<CatValuedDoc>(&text).unwrap().to_cat_valued(None).unwrap();
        assert_eq!(back.index().morphism_count(), w.index().morphism_count());
        assert_eq!(*back.value(0), *w.value(0));
    }
}

#[test]
fn diagram_maps_round_trip_with_sections() {
    let d = named_weight_str("comma").unwrap();
    let th = thicken(&d).unwrap();
    let s = thickening_sections(&d, &th.thick, |j| j % 2);
    let doc = DiagramMapDoc::from_map(&th.projection, Some(&s));
    let (m, back) = from_json::<DiagramMapDoc>(&serde_json::to_string(&doc).unwrap())
        .unwrap()
        .to_map()
        .unwrap();
    assert_eq!(m.components(), th.projection.components());
    assert_eq!(back.unwrap(), s);
    let doc = DiagramMapDoc::from_map(&equalizer_collapse(), None);
    assert!(doc.sections.is_none());
}

#[test]
fn algebras_round_trip() {
    let p = monoidal_presentation();
    let a = idempotent_z3_carrier(&p).unwrap();
    let text = serde_json::to_string(&AlgebraDoc::from_algebra(&p, &a)).unwrap();
    let back = from_json::<AlgebraDoc>(&text).unwrap().to_algebra(&p).unwrap();
    assert!(check_algebra(&p, &back).unwrap().holds);
}

#[test]
fn signature_maps_round_trip() {
    let a = Arc::new(build::discrete_n(2));
    let b = Arc::new(build::indiscrete(2));
    let f = FinFunctor::new(a.clone(), b.clone(), vec![0, 1], vec![b.identity(0), b.identity(1)]).unwrap();
    let m = SignatureMap::new(
        Signature::new([(2, a)].into()),
        Signature::new([(2, b)].into()),
        [(2, f)].into(),
    )
    .unwrap();
    let text = serde_json::to_string(&SignatureMapDoc::from_map(&m)).unwrap();
    let back = from_json::<SignatureMapDoc>(&text).unwrap().to_map().unwrap();
    assert!(back.is_objective());
    assert_eq!(back.components, m.components);
}

#[test]
fn unknown_fields_and_wrong_tags_are_rejected() {
    let mut v: serde_json::Value = serde_json::from_str(&data("inserter.json")).unwrap();
    v["extra"] = 1.into();
    assert!(matches!(from_json::<CatValuedDoc>(&v.to_string()), Err(Error::Schema(_))));
    let mut v: serde_json::Value = serde_json::from_str(&data("binary.json")).unwrap();
    v["schema"] = "signature/v2".into();
    let doc: SignatureDoc = from_json(&v.to_string()).unwrap();
    assert!(matches!(doc.to_signature(), Err(Error::Schema(_))));
}
