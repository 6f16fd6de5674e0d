# Graphs, homomorphisms, walk-trees and rigid samples
