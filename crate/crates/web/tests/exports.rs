use ueda_web::{
    classify_perturbed, classify_perturbed_value, majorant_value, resolve, resolve_value,
};

#[test]
fn majorant_matches_closed_values() {
    let v = majorant_value("1", "1", "0", 6);
    assert_eq!(v["ledger"]["A"][0], serde_json::json!([2, [2, 1]]));
    assert_eq!(v["ledger"]["A"][1], serde_json::json!([3, [10, 1]]));
    assert_eq!(v["functional_equation"], true);
    assert_eq!(
        majorant_value("1/2", "1", "0", 6)["error"]["kind"],
        "domain"
    );
    assert_eq!(majorant_value("x", "1", "0", 6)["error"]["kind"], "input");
    assert_eq!(majorant_value("1", "1", "0", 99)["error"]["kind"], "input");
}

#[test]
fn classify_examples() {
    let v = classify_perturbed_value(2, "1", 6, 5);
    assert_eq!(v["verdict"], "FiniteType");
    assert_eq!(v["order"], 2);
    let v = classify_perturbed_value(2, "0", 6, 5);
    assert_eq!(v["verdict"], "InfiniteUpTo");
    let v = classify_perturbed_value(6, "1", 6, 5);
    assert_eq!(v["error"]["kind"], "domain");
    let s = classify_perturbed(1, "1/2,1", 4, 3);
    assert!(s.contains("FiniteType"));
}

#[test]
fn resolve_examples() {
    let v = resolve_value(1);
    assert_eq!(v["ell"], serde_json::json!([1, 6]));
    assert_eq!(v["contraction"]["contractions"], 6);
    assert!(resolve(0).contains("domain"));
}
