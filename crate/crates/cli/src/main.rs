fn main() {
    println!("orbitcensus");
}
