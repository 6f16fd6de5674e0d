# Words, decider, linear algebra and witness search
