//! The nine relations on a few word pairs.

use relpat::relations::relation_holds;
use relpat::RelationKind;

fn main() {
    let pairs = [
        ("ab", "ba"),
        ("aab", "bba"),
        ("abab", "ab"),
        ("ab", "aabb"),
        ("", "a"),
    ];
    print!("{:<11}", "");
    for (u, v) in pairs {
        print!("{:>10}", format!("{u}|{v}"));
    }
    println!();
    for kind in RelationKind::ALL {
        print!("{:<11}", kind.name());
        for (u, v) in pairs {
            let u: Vec<char> = u.chars().collect();
            let v: Vec<char> = v.chars().collect();
            print!("{:>10}", relation_holds(kind, &u, &v));
        }
        println!();
    }
}
