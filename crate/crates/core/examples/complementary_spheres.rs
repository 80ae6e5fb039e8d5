//! Circumspheres and the sphere of points at unit distance from all of them.

use udg::geom::{circumsphere, complementary_sphere, Point};

fn main() {
    let tri = [
        Point::new(vec![0.3, 0.0, 0.0]).unwrap(),
        Point::new(vec![0.0, 0.3, 0.0]).unwrap(),
        Point::new(vec![0.0, 0.0, 0.3]).unwrap(),
    ];
    let s = circumsphere(&tri).unwrap();
    println!(
        "circle through the triangle: dim {}, radius {:.6}",
        s.dim(),
        s.radius
    );

    let c = complementary_sphere(&s, 3).unwrap();
    println!("complement in R^3: dim {}, radius {:.6}", c.dim(), c.radius);
    if let Some([p, q]) = c.zero_sphere_points() {
        for x in [p, q] {
            let d: Vec<String> = tri
                .iter()
                .map(|t| format!("{:.12}", t.distance(&x)))
                .collect();
            println!("  {:?} at distances {d:?}", x.coords());
        }
    }
}
