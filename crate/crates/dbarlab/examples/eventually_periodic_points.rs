//! Eventually periodic points and the mean shift-orbit distance between
//! them: canonical forms, exact values, and the pseudometric axioms on a
//! finite sample.

use dbarlab::words::{dbar_up, UpPoint, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p011: Word = "011".parse()?;
    let p01: Word = "01".parse()?;

    let x = UpPoint::periodic(p011.clone())?;
    let y = UpPoint::periodic(p01.clone())?;
    let z = UpPoint::new("11010".parse()?, p011.clone())?;

    println!("x = (011)^inf, y = (01)^inf, z = 11010 (011)^inf");
    println!("dbar(x, y) = {}", dbar_up(&x, &y));
    println!("dbar(x, z) = {} (preperiod shifts the phase)", dbar_up(&x, &z));
    println!("dbar(x, x) = {}", dbar_up(&x, &x));

    // A preperiod whose length is a multiple of the period keeps the phase,
    // so the distance to the purely periodic point is zero.
    let aligned = UpPoint::new("011011".parse()?, p011)?;
    println!("dbar(x, 011011 (011)^inf) = {}", dbar_up(&x, &aligned));

    // Triangle inequality and symmetry on the sample.
    let pts = [x, y, z, aligned];
    for (i, a) in pts.iter().enumerate() {
        for (j, b) in pts.iter().enumerate() {
            assert_eq!(dbar_up(a, b), dbar_up(b, a));
            for c in &pts {
                assert!(dbar_up(a, b) <= dbar_up(a, c) + dbar_up(c, b));
            }
            if i != j {
                println!("dbar(p{i}, p{j}) = {}", dbar_up(a, b));
            }
        }
    }
    println!("symmetry and triangle inequality hold on the sample");
    Ok(())
}
