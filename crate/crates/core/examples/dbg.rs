use blockforge::product::*;
fn main() {
    for (name, top) in [("wr2", SocleTop::Wr2), ("s3", SocleTop::S3), ("c6", SocleTop::C6), ("sigma_wr2", SocleTop::SigmaWr2)] {
        let t0 = std::time::Instant::now();
        let g = socle_group(top);
        let rows = product_designs(&g, 100_000_000).unwrap();
        println!("{name}: lambda set {:?} ({} design orbits) in {:?}", lambda_set(&rows), rows.len(), t0.elapsed());
    }
    let t0 = std::time::Instant::now();
    let g = blockforge::construct::wreath_product_action(&blockforge::construct::psl32(), 2).unwrap();
    let rows = product_designs(&g, 100_000_000).unwrap();
    println!("psl27 wr2 deg49: lambda set {:?} in {:?}", lambda_set(&rows), t0.elapsed());
}
