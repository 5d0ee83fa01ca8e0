use qcapelli::sergeev::idempotent;
use qcapelli::shifted::*;
use qcapelli::tensor::sergeev_to_operator;
use qcapelli::uqn::*;
use std::time::Instant;

fn main() {
    let shape = StrictPartition::new(vec![3, 1]).unwrap();
    let u = BarredStandardTableau::row_major(&shape);
    let t = Instant::now();
    let e = idempotent(&u);
    println!("e_U: {:?}, {} basis terms", t.elapsed(), e.num_terms());
    let t = Instant::now();
    let img = sergeev_to_operator(&e, 3);
    println!("E_U image N=3: {:?}, {} entries", t.elapsed(), img.num_terms());
    let t = Instant::now();
    let s3 = quantum_immanant(&u, 3).unwrap();
    println!("immanant N=3 total: {:?}, {} terms", t.elapsed(), s3.num_terms());
}
