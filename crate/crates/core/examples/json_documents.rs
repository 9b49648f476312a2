//! Reading and writing the JSON documents.

use serde_json::json;
use toric_bgg::diffmod::res_dm;
use toric_bgg::json::{self, Node};
use toric_bgg::Error;

fn main() -> toric_bgg::Result<()> {
    let ring_doc = json!({"schema": 1, "field": {"Fp": 101}, "vars": ["x", "y"], "degrees": [[1], [1]]});
    let r = json::ring_from_json(Node::root(&ring_doc))?;

    let dm_doc = json!({
        "schema": 1,
        "degree": [2],
        "twists": [[0], [0]],
        "del": [["x*y", "-x^2"], ["y^2", "-x*y"]],
    });
    let d = json::dm_from_json(&r, Node::root(&dm_doc))?;
    let flag = res_dm(&d, 3)?;
    let out = json::flag_to_json(&r, &flag.flag);
    println!("{}", serde_json::to_string_pretty(&out).unwrap());

    let again = json::flag_from_json(&r, Node::root(&out))?;
    assert_eq!(json::flag_to_json(&r, &again), out);

    // errors carry a pointer to the bad field
    let bad = json!({"degree": [2], "twists": [[0], [0, 1]], "del": [["0", "0"], ["0", "0"]]});
    match json::dm_from_json(&r, Node::root(&bad)) {
        Err(Error::Schema { pointer, message }) => println!("{pointer}: {message}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
